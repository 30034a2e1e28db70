#include "latlog/duality.hpp"

#include <algorithm>

namespace latlog {

namespace {

int index_of_mask(const std::vector<Mask>& sorted, Mask m) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), m);
  if (it == sorted.end() || *it != m) return -1;
  return int(it - sorted.begin());
}

}  // namespace

DualityResult dual_frame(const BoundedLattice& a) {
  DualityResult d;
  const Mask full = full_mask(a.n());
  for (const Filter& f : all_filters(a.sl))
    if (f.members != 0 && f.members != full) d.point_filter.push_back(f.members);
  const int m = int(d.point_filter.size());

  Poset p;
  p.n = m;
  for (Mask pf : d.point_filter) p.labels.push_back(a.sl.poset.label_set(pf));
  p.up.assign(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (subset_of(d.point_filter[i], d.point_filter[j])) p.up[i] |= mask_bit(j);

  d.dual.poset = p;
  d.dual.meet_table.assign(std::size_t(m) * m, -1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int k = index_of_mask(d.point_filter, d.point_filter[i] & d.point_filter[j]);
      if (k < 0)
        throw InvariantViolation("intersection of dual points is not a dual point");
      d.dual.meet_table[std::size_t(i) * m + j] = k;
    }

  d.theta.assign(a.n(), 0);
  for (int e = 0; e < a.n(); ++e)
    for (int i = 0; i < m; ++i)
      if (mask_has(d.point_filter[i], e)) d.theta[e] |= mask_bit(i);
  return d;
}

IsoReport double_dual_check(const BoundedLattice& a) {
  IsoReport rep;
  DualityResult d = dual_frame(a);
  ComplexAlgebra ca = complex_algebra(d.dual);
  if (ca.lat.n() != a.n()) {
    rep.failure = "size mismatch: " + std::to_string(a.n()) + " vs " +
                  std::to_string(ca.lat.n()) + " filters of the dual";
    return rep;
  }
  std::vector<int> map(a.n(), -1);
  for (int e = 0; e < a.n(); ++e) {
    if (!is_filter(d.dual, d.theta[e])) {
      rep.failure = "theta(" + a.sl.poset.labels[e] + ") is not a filter of the dual";
      return rep;
    }
    map[e] = ca.elem_of(d.theta[e]);
    if (map[e] < 0) {
      rep.failure = "theta(" + a.sl.poset.labels[e] + ") missing from the complex algebra";
      return rep;
    }
  }
  std::vector<bool> hit(a.n(), false);
  for (int e = 0; e < a.n(); ++e) {
    if (hit[map[e]]) {
      rep.failure = "theta collides at " + a.sl.poset.labels[e];
      return rep;
    }
    hit[map[e]] = true;
  }
  auto lbl = [&](int e) { return a.sl.poset.labels[e]; };
  for (int x = 0; x < a.n(); ++x)
    for (int y = 0; y < a.n(); ++y) {
      if (map[a.meet(x, y)] != ca.lat.meet(map[x], map[y])) {
        rep.failure = "theta(" + lbl(x) + " & " + lbl(y) + ") != theta(" + lbl(x) +
                      ") meet theta(" + lbl(y) + ")";
        return rep;
      }
      if (map[a.join(x, y)] != ca.lat.join(map[x], map[y])) {
        rep.failure = "theta(" + lbl(x) + " | " + lbl(y) + ") != theta(" + lbl(x) +
                      ") join theta(" + lbl(y) + ")";
        return rep;
      }
    }
  if (map[a.top] != ca.lat.top || map[a.bottom] != ca.lat.bottom) {
    rep.failure = "theta does not preserve the bounds";
    return rep;
  }
  rep.is_iso = true;
  rep.map = std::move(map);
  return rep;
}

IsoReport frame_double_dual_check(const MeetSemilattice& sl) {
  IsoReport rep;
  ComplexAlgebra ca = complex_algebra(sl);
  // Dual points of the complex algebra, as a bounded semilattice.
  std::vector<Mask> points;
  const Mask full = full_mask(ca.lat.n());
  for (const Filter& f : all_filters(ca.lat.sl))
    if (f.members != 0 && f.members != full) points.push_back(f.members);
  if (int(points.size()) != sl.n()) {
    rep.failure = "dual carrier size " + std::to_string(points.size()) +
                  " differs from frame size " + std::to_string(sl.n());
    return rep;
  }
  std::vector<int> map(sl.n(), -1);
  for (int x = 0; x < sl.n(); ++x) {
    Mask eta = 0;  // { a in F(X) : x in a }
    for (int i = 0; i < ca.lat.n(); ++i)
      if (mask_has(ca.filter_of_elem[i], x)) eta |= mask_bit(i);
    map[x] = index_of_mask(points, eta);
    if (map[x] < 0) {
      rep.failure = "eta(" + sl.poset.labels[x] + ") is not a nonempty proper filter of F(X)";
      return rep;
    }
  }
  std::vector<bool> hit(points.size(), false);
  for (int x = 0; x < sl.n(); ++x) {
    if (hit[map[x]]) {
      rep.failure = "eta collides at " + sl.poset.labels[x];
      return rep;
    }
    hit[map[x]] = true;
  }
  for (int x = 0; x < sl.n(); ++x)
    for (int y = 0; y < sl.n(); ++y) {
      bool lhs = sl.leq(x, y);
      bool rhs = subset_of(points[map[x]], points[map[y]]);
      if (lhs != rhs) {
        rep.failure = "eta is not an order isomorphism at (" + sl.poset.labels[x] + "," +
                      sl.poset.labels[y] + ")";
        return rep;
      }
      Mask meet_img = points[map[sl.meet(x, y)]];
      if (meet_img != (points[map[x]] & points[map[y]])) {
        rep.failure = "eta does not preserve meets at (" + sl.poset.labels[x] + "," +
                      sl.poset.labels[y] + ")";
        return rep;
      }
    }
  rep.is_iso = true;
  rep.map = std::move(map);
  return rep;
}

Completion filter_completion(const BoundedLattice& a) {
  Completion c;
  c.kind = CompletionKind::FilterCompletion;
  std::vector<Mask> fs;
  for (const Filter& f : all_filters(a.sl))
    if (f.members != 0) fs.push_back(f.members);
  const int m = int(fs.size());

  Poset p;
  p.n = m;
  for (Mask f : fs) p.labels.push_back(a.sl.poset.label_set(f));
  p.up.assign(m, 0);
  // Reverse inclusion: p <= q in the completion iff q is a subset of p.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (subset_of(fs[j], fs[i])) p.up[i] |= mask_bit(j);

  BoundedLattice& lat = c.lattice;
  lat.sl.poset = p;
  lat.sl.meet_table.assign(std::size_t(m) * m, -1);
  lat.join_table.assign(std::size_t(m) * m, -1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int meet_idx = index_of_mask(fs, filter_join_masks(a.sl, fs[i], fs[j]));
      int join_idx = index_of_mask(fs, fs[i] & fs[j]);
      if (meet_idx < 0 || join_idx < 0)
        throw InvariantViolation("filter completion is not closed under its operations");
      lat.sl.meet_table[std::size_t(i) * m + j] = meet_idx;
      lat.join_table[std::size_t(i) * m + j] = join_idx;
    }
  lat.top = index_of_mask(fs, a.sl.up(a.top));        // {top}
  lat.bottom = index_of_mask(fs, full_mask(a.n()));   // the whole lattice
  c.embed.assign(a.n(), -1);
  for (int x = 0; x < a.n(); ++x) c.embed[x] = index_of_mask(fs, a.sl.up(x));
  return c;
}

Completion f2_completion(const BoundedLattice& a) {
  Completion c;
  c.kind = CompletionKind::F2Completion;
  DualityResult d = dual_frame(a);
  ComplexAlgebra ca = complex_algebra(d.dual);
  c.lattice = ca.lat;
  c.embed.assign(a.n(), -1);
  for (int e = 0; e < a.n(); ++e) c.embed[e] = ca.elem_of(d.theta[e]);
  return c;
}

IsoReport completion_iso(const BoundedLattice& a, const Completion& c) {
  IsoReport rep;
  if (c.lattice.n() != a.n()) {
    rep.failure = "completion has " + std::to_string(c.lattice.n()) + " elements, original " +
                  std::to_string(a.n());
    return rep;
  }
  std::vector<bool> hit(a.n(), false);
  for (int x = 0; x < a.n(); ++x) {
    if (c.embed[x] < 0 || c.embed[x] >= a.n() || hit[c.embed[x]]) {
      rep.failure = "embedding is not a bijection at " + a.sl.poset.labels[x];
      return rep;
    }
    hit[c.embed[x]] = true;
  }
  for (int x = 0; x < a.n(); ++x)
    for (int y = 0; y < a.n(); ++y) {
      if (c.embed[a.meet(x, y)] != c.lattice.meet(c.embed[x], c.embed[y]) ||
          c.embed[a.join(x, y)] != c.lattice.join(c.embed[x], c.embed[y])) {
        rep.failure = "embedding is not homomorphic at (" + a.sl.poset.labels[x] + "," +
                      a.sl.poset.labels[y] + ")";
        return rep;
      }
    }
  if (c.embed[a.top] != c.lattice.top || c.embed[a.bottom] != c.lattice.bottom) {
    rep.failure = "embedding does not preserve the bounds";
    return rep;
  }
  rep.is_iso = true;
  rep.map = c.embed;
  return rep;
}

ModalLattice modal_complex_algebra(const ModalLFrame& f, VClass vclass) {
  (void)vclass;  // principal filters are all filters on finite carriers, and
                 // the principal frame conditions reduce to (1)-(5)
  if (!f.checked && !modal_frame_conditions_ok(f.sl, f.rel))
    throw FrameConditionViolated(modal_frame_check(f.sl, f.rel).summary());
  ComplexAlgebra ca = complex_algebra(f.sl);
  ModalLattice m;
  m.lat = ca.lat;
  m.box.assign(ca.lat.n(), -1);
  m.dia.assign(ca.lat.n(), -1);
  for (int i = 0; i < ca.lat.n(); ++i) {
    auto [b, d] = box_dia(f, ca.filter_of_elem[i]);
    m.box[i] = ca.elem_of(b);
    m.dia[i] = ca.elem_of(d);
    if (m.box[i] < 0 || m.dia[i] < 0)
      throw InvariantViolation("box/dia image of a filter is not a filter");
  }
  if (auto bad = modal_lattice_violation(m)) throw InvariantViolation(*bad);
  return m;
}

std::vector<Mask> tight_closure(const MeetSemilattice& sl, const std::vector<Mask>& rel) {
  std::vector<Filter> fs = all_filters(sl);
  std::vector<Mask> out(sl.n(), 0);
  for (int x = 0; x < sl.n(); ++x)
    for (int y = 0; y < sl.n(); ++y) {
      bool tight = true;
      for (const Filter& a : fs) {
        if (subset_of(rel[x], a.members) && !mask_has(a.members, y)) tight = false;
        if (mask_has(a.members, y) && (rel[x] & a.members) == 0) tight = false;
        if (!tight) break;
      }
      if (tight) out[x] |= mask_bit(y);
    }
  return out;
}

bool is_tight(const MeetSemilattice& sl, const std::vector<Mask>& rel) {
  return tight_closure(sl, rel) == rel;
}

std::pair<ModalLFrame, DualityResult> modal_dual(const ModalLattice& m) {
  if (auto bad = modal_lattice_violation(m)) throw InvariantViolation(*bad);
  DualityResult d = dual_frame(m.lat);
  const int k = int(d.point_filter.size());
  auto preimage = [&](const std::vector<int>& table, Mask p) {
    Mask out = 0;
    for (int e = 0; e < m.lat.n(); ++e)
      if (mask_has(p, table[e])) out |= mask_bit(e);
    return out;
  };
  d.modal_rel.assign(k, 0);
  for (int i = 0; i < k; ++i) {
    Mask boxinv = preimage(m.box, d.point_filter[i]);
    Mask diainv = preimage(m.dia, d.point_filter[i]);
    for (int j = 0; j < k; ++j)
      if (subset_of(boxinv, d.point_filter[j]) && subset_of(d.point_filter[j], diainv))
        d.modal_rel[i] |= mask_bit(j);
  }
  // Conditions (1)-(5); the principal conditions follow on finite carriers.
  if (!modal_frame_conditions_ok(d.dual, d.modal_rel))
    throw InvariantViolation("dual relation violates the modal frame conditions: " +
                             modal_frame_check(d.dual, d.modal_rel).summary());
  ModalLFrame frame{d.dual, d.modal_rel, true};
  // [R_A] theta(a) = theta(box a) and <R_A> theta(a) = theta(dia a).
  for (int e = 0; e < m.lat.n(); ++e) {
    auto [b, di] = box_dia(frame, d.theta[e]);
    if (b != d.theta[m.box[e]])
      throw InvariantViolation("[R_A]theta(" + m.lat.sl.poset.labels[e] + ") != theta(box " +
                               m.lat.sl.poset.labels[e] + ")");
    if (di != d.theta[m.dia[e]])
      throw InvariantViolation("<R_A>theta(" + m.lat.sl.poset.labels[e] + ") != theta(dia " +
                               m.lat.sl.poset.labels[e] + ")");
  }
  return {frame, d};
}

}  // namespace latlog
