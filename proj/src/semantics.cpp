#include "latlog/semantics.hpp"

#include <algorithm>
#include <set>

namespace latlog {

std::pair<Mask, Mask> box_dia(const ModalLFrame& f, Mask a) {
  Mask box = 0, dia = 0;
  for (int x = 0; x < f.n(); ++x) {
    if (subset_of(f.rel[x], a)) box |= mask_bit(x);
    if ((f.rel[x] & a) != 0) dia |= mask_bit(x);
  }
  return {box, dia};
}

bool ConditionReport::basic_ok() const {
  for (const auto& c : basic)
    if (!c.ok) return false;
  return true;
}

bool ConditionReport::principal_ok() const {
  if (!principal0.ok) return false;
  for (const auto& c : principal)
    if (!c.ok) return false;
  return true;
}

std::string ConditionReport::summary() const {
  std::string out;
  for (std::size_t i = 0; i < basic.size(); ++i)
    if (!basic[i].ok)
      out += "(" + std::to_string(i + 1) + ") fails at " + basic[i].witness + "; ";
  if (!principal0.ok) out += "(p0) " + principal0.witness + "; ";
  for (std::size_t i = 0; i < principal.size(); ++i)
    if (!principal[i].ok)
      out += "(p" + std::to_string(i + 1) + ") fails at " + principal[i].witness + "; ";
  if (out.empty()) out = "all conditions hold";
  return out;
}

namespace {

std::vector<Mask> down_masks(const MeetSemilattice& sl) {
  std::vector<Mask> dn(sl.n(), 0);
  for (int i = 0; i < sl.n(); ++i)
    for (int j = 0; j < sl.n(); ++j)
      if (sl.leq(i, j)) dn[j] |= mask_bit(i);
  return dn;
}

// Conditions (1)-(5) without witness bookkeeping, for enumeration loops.
bool basic_conditions_fast(const MeetSemilattice& sl, const std::vector<Mask>& rel,
                           const std::vector<Mask>& dn) {
  const int n = sl.n();
  for (int x = 0; x < n; ++x)
    if (rel[x] == 0) return false;  // (5)
  // Rows must be closed under meets ((4) with x = y); cheap rejection.
  for (int x = 0; x < n; ++x)
    for (int v : mask_elements(rel[x]))
      for (int w : mask_elements(rel[x]))
        if (!mask_has(rel[x], sl.meet(v, w))) return false;
  std::vector<Mask> upimg(n, 0), dnimg(n, 0);
  for (int x = 0; x < n; ++x)
    for (int w : mask_elements(rel[x])) {
      upimg[x] |= sl.up(w);
      dnimg[x] |= dn[w];
    }
  for (int x = 0; x < n; ++x)
    for (int y : mask_elements(sl.up(x))) {
      if (!subset_of(rel[y], upimg[x])) return false;  // (1)
      if (!subset_of(rel[x], dnimg[y])) return false;  // (2)
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int m = sl.meet(x, y);
      Mask reach = 0, meets = 0;
      for (int v : mask_elements(rel[x]))
        for (int w : mask_elements(rel[y])) {
          int vw = sl.meet(v, w);
          reach |= sl.up(vw);
          meets |= mask_bit(vw);
        }
      if (!subset_of(rel[m], reach)) return false;   // (3)
      if (!subset_of(meets, rel[m])) return false;   // (4)
    }
  return true;
}

std::string wit(const Poset& p, std::initializer_list<std::pair<const char*, int>> parts) {
  std::string out;
  for (const auto& [name, idx] : parts) {
    if (!out.empty()) out += ",";
    out += std::string(name) + "=" + p.labels[idx];
  }
  return out;
}

}  // namespace

ConditionReport modal_frame_check(const MeetSemilattice& sl, const std::vector<Mask>& rel) {
  if (int(rel.size()) != sl.n()) throw Error("relation row count does not match carrier");
  ConditionReport rep;
  const int n = sl.n();
  const Poset& p = sl.poset;
  std::vector<Mask> dn = down_masks(sl);

  // (1) x <= y and yRz imply some w with xRw and w <= z.
  auto& c1 = rep.basic[0];
  for (int x = 0; x < n && c1.ok; ++x)
    for (int y : mask_elements(sl.up(x))) {
      for (int z : mask_elements(rel[y]))
        if ((rel[x] & dn[z]) == 0) {
          c1 = {false, wit(p, {{"x", x}, {"y", y}, {"z", z}})};
          break;
        }
      if (!c1.ok) break;
    }

  // (2) x <= y and xRw imply some z with yRz and w <= z.
  auto& c2 = rep.basic[1];
  for (int x = 0; x < n && c2.ok; ++x)
    for (int y : mask_elements(sl.up(x))) {
      for (int w : mask_elements(rel[x]))
        if ((rel[y] & sl.up(w)) == 0) {
          c2 = {false, wit(p, {{"x", x}, {"y", y}, {"w", w}})};
          break;
        }
      if (!c2.ok) break;
    }

  // (3) (x/\y)Rz implies some v,w with xRv, yRw and v/\w <= z.
  auto& c3 = rep.basic[2];
  for (int x = 0; x < n && c3.ok; ++x)
    for (int y = 0; y < n && c3.ok; ++y) {
      int m = sl.meet(x, y);
      for (int z : mask_elements(rel[m])) {
        bool found = false;
        for (int v : mask_elements(rel[x])) {
          for (int w : mask_elements(rel[y]))
            if (sl.leq(sl.meet(v, w), z)) {
              found = true;
              break;
            }
          if (found) break;
        }
        if (!found) {
          c3 = {false, wit(p, {{"x", x}, {"y", y}, {"z", z}})};
          break;
        }
      }
    }

  // (4) xRv and yRw imply (x/\y)R(v/\w).
  auto& c4 = rep.basic[3];
  for (int x = 0; x < n && c4.ok; ++x)
    for (int y = 0; y < n && c4.ok; ++y)
      for (int v : mask_elements(rel[x])) {
        for (int w : mask_elements(rel[y]))
          if (!mask_has(rel[sl.meet(x, y)], sl.meet(v, w))) {
            c4 = {false, wit(p, {{"x", x}, {"y", y}, {"v", v}, {"w", w}})};
            break;
          }
        if (!c4.ok) break;
      }

  // (5) seriality.
  auto& c5 = rep.basic[4];
  for (int x = 0; x < n; ++x)
    if (rel[x] == 0) {
      c5 = {false, wit(p, {{"x", x}})};
      break;
    }

  // Principal condition (0): every non-empty subset has a greatest lower
  // bound. The iterated binary meet supplies it on finite carriers, and joins
  // of bounded pairs come for free; verified directly for small carriers.
  if (n <= 7) {
    for (Mask S = 1; S <= full_mask(n) && rep.principal0.ok; ++S) {
      int m = sl.meet_all(S);
      for (int s : mask_elements(S))
        if (!sl.leq(m, s)) rep.principal0 = {false, "meet of " + p.label_set(S) + " not below"};
      for (int k = 0; k < n && rep.principal0.ok; ++k) {
        bool lower = true;
        for (int s : mask_elements(S)) lower = lower && sl.leq(k, s);
        if (lower && !sl.leq(k, m))
          rep.principal0 = {false, "meet of " + p.label_set(S) + " not greatest"};
      }
    }
  }

  rep.principal[0] = rep.basic[0];
  rep.principal[1] = rep.basic[1];
  rep.principal[4] = rep.basic[4];

  // Principal (3): for every non-empty subset S and z with meet(S)Rz there
  // are successors z_i of the members of S whose meet is below z. Quantified
  // directly for small carriers; equivalent to (3) by meet-composition on
  // finite carriers, which is the fallback for larger inputs.
  auto& p3 = rep.principal[2];
  if (n > 7) {
    p3 = rep.basic[2];
  } else {
    for (Mask S = 1; S <= full_mask(n) && p3.ok; ++S) {
      int m = sl.meet_all(S);
      auto elems = mask_elements(S);
      for (int z : mask_elements(rel[m])) {
        // Depth-first product of successor choices, tracking the running meet.
        std::function<bool(std::size_t, int, bool)> pick = [&](std::size_t k, int acc,
                                                               bool have) -> bool {
          if (k == elems.size()) return have && sl.leq(acc, z);
          for (int zi : mask_elements(rel[elems[k]]))
            if (pick(k + 1, have ? sl.meet(acc, zi) : zi, true)) return true;
          return false;
        };
        if (!pick(0, -1, false)) {
          p3 = {false, "S=" + p.label_set(S) + "," + wit(p, {{"z", z}})};
          break;
        }
      }
    }
  }

  // Principal (4): every non-empty family of R-pairs meet-composes into R.
  // Direct quantification over families (subsets of R) when feasible; the
  // binary case is equivalent on finite carriers and covers larger inputs.
  auto& p4 = rep.principal[3];
  {
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < n; ++x)
      for (int y : mask_elements(rel[x])) pairs.emplace_back(x, y);
    if (pairs.size() > 25) {
      p4 = rep.basic[3];
    } else {
      std::function<bool(std::size_t, int, int, bool)> walk =
          [&](std::size_t k, int mx, int my, bool have) -> bool {
        if (k == pairs.size()) {
          if (have && !mask_has(rel[mx], my)) {
            p4 = {false,
                  "family meets to (" + p.labels[mx] + "," + p.labels[my] + ") not in R"};
            return false;
          }
          return true;
        }
        if (!walk(k + 1, mx, my, have)) return false;  // skip pairs[k]
        auto [x, y] = pairs[k];
        return walk(k + 1, have ? sl.meet(mx, x) : x, have ? sl.meet(my, y) : y, true);
      };
      walk(0, -1, -1, false);
    }
  }

  return rep;
}

bool modal_frame_conditions_ok(const MeetSemilattice& sl, const std::vector<Mask>& rel) {
  if (int(rel.size()) != sl.n()) return false;
  std::vector<Mask> dn = down_masks(sl);
  return basic_conditions_fast(sl, rel, dn);
}

ModalLFrame make_modal_frame(MeetSemilattice sl, std::vector<Mask> rel) {
  ConditionReport rep = modal_frame_check(sl, rel);
  if (!rep.basic_ok()) throw FrameConditionViolated(rep.summary());
  ModalLFrame f{std::move(sl), std::move(rel), true};
  return f;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Mask eval_rec(const MeetSemilattice& sl, const std::vector<Mask>* rel, const Valuation& val,
              const Formula& f) {
  switch (f->kind) {
    case FKind::Prop: {
      auto it = val.find(f->name);
      if (it == val.end()) throw MissingLetter(f->name);
      return it->second;
    }
    case FKind::Top:
      return full_mask(sl.n());
    case FKind::Bot:
      return 0;
    case FKind::And:
      return eval_rec(sl, rel, val, f->left) & eval_rec(sl, rel, val, f->right);
    case FKind::Or: {
      Mask a = eval_rec(sl, rel, val, f->left);
      Mask b = eval_rec(sl, rel, val, f->right);
      Mask res = a | b;
      for (int y : mask_elements(a))
        for (int z : mask_elements(b)) res |= sl.up(sl.meet(y, z));
      return res;
    }
    case FKind::Box:
    case FKind::Dia: {
      if (rel == nullptr)
        throw FrameConditionViolated("modal formula evaluated on a non-modal model");
      Mask a = eval_rec(sl, rel, val, f->left);
      Mask out = 0;
      for (int x = 0; x < sl.n(); ++x) {
        bool holds = f->kind == FKind::Box ? subset_of((*rel)[x], a) : ((*rel)[x] & a) != 0;
        if (holds) out |= mask_bit(x);
      }
      return out;
    }
  }
  return 0;
}

}  // namespace

Mask eval_model(const LModel& m, const Formula& f) {
  return eval_rec(m.sl, nullptr, m.val, f);
}

Mask eval_model(const ModalLModel& m, const Formula& f) {
  if (!m.frame.checked) {
    ConditionReport rep = modal_frame_check(m.frame.sl, m.frame.rel);
    if (!rep.basic_ok()) throw FrameConditionViolated(rep.summary());
  }
  return eval_rec(m.frame.sl, &m.frame.rel, m.val, f);
}

std::optional<std::string> modal_lattice_violation(const ModalLattice& m) {
  const BoundedLattice& l = m.lat;
  const int n = l.n();
  auto lbl = [&](int i) { return l.sl.poset.labels[i]; };
  if (int(m.box.size()) != n || int(m.dia.size()) != n)
    return "box/dia table size mismatch";
  if (m.box[l.top] != l.top) return "box top != top";
  if (m.dia[l.top] != l.top) return "dia top != top";
  if (m.dia[l.bottom] != l.bottom) return "dia bot != bot";
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (m.box[l.meet(a, b)] != l.meet(m.box[a], m.box[b]))
        return "box(a & b) != box a & box b at a=" + lbl(a) + ", b=" + lbl(b);
      if (!l.leq(m.dia[a], m.dia[l.join(a, b)]))
        return "dia a <= dia(a | b) fails at a=" + lbl(a) + ", b=" + lbl(b);
      if (!l.leq(l.meet(m.dia[a], m.box[b]), m.dia[l.meet(a, b)]))
        return "dia a & box b <= dia(a & b) fails at a=" + lbl(a) + ", b=" + lbl(b);
    }
  return std::nullopt;
}

namespace {

int eval_lat_rec(const BoundedLattice& lat, const std::vector<int>* box,
                 const std::vector<int>* dia, const Assignment& sigma, const Formula& f) {
  switch (f->kind) {
    case FKind::Prop: {
      auto it = sigma.find(f->name);
      if (it == sigma.end()) throw MissingLetter(f->name);
      return it->second;
    }
    case FKind::Top:
      return lat.top;
    case FKind::Bot:
      return lat.bottom;
    case FKind::And:
      return lat.meet(eval_lat_rec(lat, box, dia, sigma, f->left),
                      eval_lat_rec(lat, box, dia, sigma, f->right));
    case FKind::Or:
      return lat.join(eval_lat_rec(lat, box, dia, sigma, f->left),
                      eval_lat_rec(lat, box, dia, sigma, f->right));
    case FKind::Box:
      if (box == nullptr) throw ModalOnPlainLattice();
      return (*box)[eval_lat_rec(lat, box, dia, sigma, f->left)];
    case FKind::Dia:
      if (dia == nullptr) throw ModalOnPlainLattice();
      return (*dia)[eval_lat_rec(lat, box, dia, sigma, f->left)];
  }
  return -1;
}

}  // namespace

int eval_in_lattice(const BoundedLattice& a, const Assignment& sigma, const Formula& f) {
  return eval_lat_rec(a, nullptr, nullptr, sigma, f);
}

int eval_in_lattice(const ModalLattice& a, const Assignment& sigma, const Formula& f) {
  return eval_lat_rec(a.lat, &a.box, &a.dia, sigma, f);
}

// ---------------------------------------------------------------------------
// Frame validity

namespace {

Verdict validity_impl(const MeetSemilattice& sl, const std::vector<Mask>* rel,
                      const ConsequencePair& pair, VClass vclass, long long budget) {
  bool modal = !modality_free(pair.lhs) || !modality_free(pair.rhs);
  if (modal && rel == nullptr)
    throw FrameConditionViolated("modal pair requires a modal L-frame");
  std::vector<Filter> fs =
      vclass == VClass::AllFilters ? all_filters(sl) : principal_filters(sl);
  std::vector<std::string> ls = letters(pair);

  long long cost = sl.n() == 0 ? 1 : sl.n();
  for (std::size_t k = 0; k < ls.size(); ++k)
    cost *= std::max<long long>(1, (long long)fs.size());
  if (cost > budget) throw Infeasible(cost);

  std::vector<std::size_t> idx(ls.size(), 0);
  Valuation v;
  while (true) {
    v.clear();
    for (std::size_t k = 0; k < ls.size(); ++k) v[ls[k]] = fs[idx[k]].members;
    Mask L = eval_rec(sl, rel, v, pair.lhs);
    Mask R = eval_rec(sl, rel, v, pair.rhs);
    Mask diff = L & ~R;
    if (diff != 0) {
      Witness w;
      w.valuation = v;
      w.state = std::countr_zero(diff);
      return Verdict{false, w};
    }
    // Odometer, last letter fastest.
    std::size_t k = ls.size();
    while (k > 0) {
      if (++idx[k - 1] < fs.size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return Verdict{true, std::nullopt};
}

}  // namespace

Verdict frame_validity(const MeetSemilattice& frame, const ConsequencePair& pair,
                       VClass vclass, long long budget) {
  return validity_impl(frame, nullptr, pair, vclass, budget);
}

Verdict frame_validity(const ModalLFrame& frame, const ConsequencePair& pair,
                       VClass vclass, long long budget) {
  // On finite carriers the principal conditions coincide with the basic ones:
  // (0) holds via iterated meets, and (3)/(4) over arbitrary index sets
  // follow from the binary cases by meet-composition.
  if (!frame.checked) {
    std::vector<Mask> dn = down_masks(frame.sl);
    if (!basic_conditions_fast(frame.sl, frame.rel, dn))
      throw FrameConditionViolated(modal_frame_check(frame.sl, frame.rel).summary());
  }
  return validity_impl(frame.sl, &frame.rel, pair, vclass, budget);
}

bool is_bounded_L_morphism(const std::vector<int>& f, const ModalLFrame& F1,
                           const ModalLFrame& F2) {
  if (!is_L_morphism(f, F1.sl, F2.sl)) return false;
  const int n1 = F1.n();
  for (int x = 0; x < n1; ++x) {
    for (int y : mask_elements(F1.rel[x]))
      if (!mask_has(F2.rel[f[x]], f[y])) return false;  // forth
    for (int zp : mask_elements(F2.rel[f[x]])) {
      bool below = false, above = false;
      for (int z : mask_elements(F1.rel[x])) {
        if (F2.sl.leq(f[z], zp)) below = true;  // back, image under z'
        if (F2.sl.leq(zp, f[z])) above = true;  // back, image above z'
      }
      if (!below || !above) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration

std::uint64_t encode_order(const std::vector<Mask>& up, int n) {
  std::uint64_t code = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (mask_has(up[i], j)) code |= std::uint64_t{1} << (i * n + j);
  return code;
}

std::uint64_t encode_rel(const std::vector<Mask>& rel, int n) {
  std::uint64_t code = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (mask_has(rel[i], j)) code |= std::uint64_t{1} << (i * n + j);
  return code;
}

namespace {

std::vector<Mask> decode_rows(std::uint64_t code, int n) {
  std::vector<Mask> rows(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((code >> (i * n + j)) & 1) rows[i] |= mask_bit(j);
  return rows;
}

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

Poset poset_from_rows(std::vector<Mask> up, int n) {
  Poset p;
  p.n = n;
  p.labels = default_labels(n);
  p.up = std::move(up);
  return p;
}

bool has_all_meets(const Poset& p, const std::vector<Mask>& dn) {
  (void)p;
  const int n = int(dn.size());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Mask lower = dn[i] & dn[j];
      if (lower == 0) return false;
      bool found = false;
      for (int g : mask_elements(lower))
        if (subset_of(lower, dn[g])) {  // g above every common lower bound
          found = true;
          break;
        }
      if (!found) return false;
    }
  return true;
}

std::vector<Mask> dn_of(const std::vector<Mask>& up, int n) {
  std::vector<Mask> dn(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j : mask_elements(up[i])) dn[j] |= mask_bit(i);
  return dn;
}

void for_each_labeled_poset(int n, const std::function<void(const std::vector<Mask>&)>& fn) {
  if (n == 0) return;
  std::vector<std::pair<int, int>> pos;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pos.emplace_back(i, j);
  const int bits = int(pos.size());
  std::vector<Mask> up(n, 0);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    for (int i = 0; i < n; ++i) up[i] = mask_bit(i);
    for (int k = 0; k < bits; ++k)
      if ((code >> k) & 1) up[pos[k].first] |= mask_bit(pos[k].second);
    if (is_partial_order(up, n)) fn(up);
  }
}

void natural_posets_rec(int n, int k, std::vector<Mask>& up, std::vector<Mask>& dn,
                        const std::function<void(const std::vector<Mask>&)>& fn) {
  if (k == n) {
    fn(up);
    return;
  }
  for (Mask D = 0; D < (Mask{1} << k); ++D) {
    bool closed = true;
    for (int d : mask_elements(D))
      if (!subset_of(dn[d], D)) {
        closed = false;
        break;
      }
    if (!closed) continue;
    up[k] = mask_bit(k);
    dn[k] = D | mask_bit(k);
    for (int d : mask_elements(D)) up[d] |= mask_bit(k);
    natural_posets_rec(n, k + 1, up, dn, fn);
    for (int d : mask_elements(D)) up[d] &= ~mask_bit(k);
  }
}

void for_each_natural_poset(int n, const std::function<void(const std::vector<Mask>&)>& fn) {
  if (n == 0) return;
  std::vector<Mask> up(n, 0), dn(n, 0);
  natural_posets_rec(n, 0, up, dn, fn);
}

std::uint64_t canonical_order_code(const std::vector<Mask>& up, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = 0;
    for (int i = 0; i < n; ++i)
      for (int j : mask_elements(up[i]))
        code |= std::uint64_t{1} << (perm[i] * n + perm[j]);
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::pair<std::uint64_t, std::uint64_t> canonical_pair_code(const std::vector<Mask>& up,
                                                            const std::vector<Mask>& rel,
                                                            int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::pair<std::uint64_t, std::uint64_t> best{~std::uint64_t{0}, ~std::uint64_t{0}};
  do {
    std::uint64_t oc = 0, rc = 0;
    for (int i = 0; i < n; ++i) {
      for (int j : mask_elements(up[i])) oc |= std::uint64_t{1} << (perm[i] * n + perm[j]);
      for (int j : mask_elements(rel[i])) rc |= std::uint64_t{1} << (perm[i] * n + perm[j]);
    }
    best = std::min(best, std::make_pair(oc, rc));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// All serial relations whose rows are meet-closed, then the full condition
// check; calls fn for each relation in ascending row-major encoding.
void for_each_valid_relation(const MeetSemilattice& sl,
                             const std::function<void(const std::vector<Mask>&)>& fn) {
  const int n = sl.n();
  std::vector<Mask> dn = down_masks(sl);
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Mask> rel = decode_rows(code, n);
    bool serial = true;
    for (int x = 0; x < n; ++x)
      if (rel[x] == 0) {
        serial = false;
        break;
      }
    if (!serial) continue;
    if (basic_conditions_fast(sl, rel, dn)) fn(rel);
  }
}

}  // namespace

int enumeration_bound(FrameKind kind, bool up_to_iso) {
  if (kind == FrameKind::Modal) return 4;
  return up_to_iso ? 7 : 5;
}

void enumerate_frames(int n, FrameKind kind, bool up_to_iso,
                      const std::function<void(const EnumeratedFrame&)>& fn) {
  if (n < 1) throw BoundExceeded("frame enumeration needs n >= 1");
  if (n > enumeration_bound(kind, up_to_iso))
    throw BoundExceeded("frame enumeration at n=" + std::to_string(n));

  auto try_build = [&](const std::vector<Mask>& up) -> std::optional<MeetSemilattice> {
    Poset p = poset_from_rows(up, n);
    std::vector<Mask> dn = dn_of(up, n);
    if (!has_all_meets(p, dn)) return std::nullopt;
    MeetSemilattice sl = meet_structure(p);
    if (kind == FrameKind::Lattice && !has_binary_joins(p)) return std::nullopt;
    return sl;
  };

  if (!up_to_iso) {
    for_each_labeled_poset(n, [&](const std::vector<Mask>& up) {
      auto sl = try_build(up);
      if (!sl) return;
      if (kind == FrameKind::Modal) {
        for_each_valid_relation(*sl, [&](const std::vector<Mask>& rel) {
          fn(EnumeratedFrame{*sl, rel});
        });
      } else {
        fn(EnumeratedFrame{*sl, {}});
      }
    });
    return;
  }

  if (kind != FrameKind::Modal) {
    std::set<std::uint64_t> canon;
    for_each_natural_poset(n, [&](const std::vector<Mask>& up) {
      Poset p = poset_from_rows(up, n);
      std::vector<Mask> dn = dn_of(up, n);
      if (!has_all_meets(p, dn)) return;
      if (kind == FrameKind::Lattice && !has_binary_joins(p)) return;
      canon.insert(canonical_order_code(up, n));
    });
    for (std::uint64_t code : canon) {
      Poset p = poset_from_rows(decode_rows(code, n), n);
      fn(EnumeratedFrame{meet_structure(p), {}});
    }
    return;
  }

  std::set<std::pair<std::uint64_t, std::uint64_t>> canon;
  for_each_natural_poset(n, [&](const std::vector<Mask>& up) {
    Poset p = poset_from_rows(up, n);
    std::vector<Mask> dn = dn_of(up, n);
    if (!has_all_meets(p, dn)) return;
    MeetSemilattice sl = meet_structure(p);
    for_each_valid_relation(sl, [&](const std::vector<Mask>& rel) {
      canon.insert(canonical_pair_code(up, rel, n));
    });
  });
  for (const auto& [oc, rc] : canon) {
    Poset p = poset_from_rows(decode_rows(oc, n), n);
    fn(EnumeratedFrame{meet_structure(p), decode_rows(rc, n)});
  }
}

}  // namespace latlog
