#include "latlog/order.hpp"

#include <algorithm>
#include <map>

namespace latlog {

std::vector<int> mask_elements(Mask m) {
  std::vector<int> out;
  for (Mask rest = m; rest != 0; rest &= rest - 1)
    out.push_back(std::countr_zero(rest));
  return out;
}

int Poset::index_of(const std::string& label) const {
  for (int i = 0; i < n; ++i)
    if (labels[i] == label) return i;
  return -1;
}

std::string Poset::label_set(Mask m) const {
  std::string out = "{";
  bool first = true;
  for (int i : mask_elements(m)) {
    if (!first) out += ",";
    out += labels[i];
    first = false;
  }
  return out + "}";
}

bool is_partial_order(const std::vector<Mask>& up, int n) {
  for (int i = 0; i < n; ++i) {
    if (!mask_has(up[i], i)) return false;
    for (int j : mask_elements(up[i])) {
      if (i != j && mask_has(up[j], i)) return false;  // antisymmetry
      if (!subset_of(up[j], up[i])) return false;      // transitivity
    }
  }
  return true;
}

Poset validate_poset(const std::vector<std::string>& labels,
                     const std::vector<std::pair<std::string, std::string>>& leq_pairs) {
  Poset p;
  p.labels = labels;
  p.n = int(labels.size());
  if (p.n > kMaxElements)
    throw BoundExceeded("carrier of " + std::to_string(p.n) + " elements (max " +
                        std::to_string(kMaxElements) + ")");
  std::map<std::string, int> index;
  for (int i = 0; i < p.n; ++i) {
    if (!index.emplace(labels[i], i).second) throw DuplicateLabel(labels[i]);
  }
  p.up.assign(p.n, 0);
  for (int i = 0; i < p.n; ++i) p.up[i] = mask_bit(i);
  for (const auto& [a, b] : leq_pairs) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) throw Error("unknown label in order pair: " + a);
    if (ib == index.end()) throw Error("unknown label in order pair: " + b);
    p.up[ia->second] |= mask_bit(ib->second);
  }
  // Transitive closure by fixpoint; carriers are tiny.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < p.n; ++i) {
      Mask acc = p.up[i];
      for (int j : mask_elements(p.up[i])) acc |= p.up[j];
      if (acc != p.up[i]) {
        p.up[i] = acc;
        changed = true;
      }
    }
  }
  for (int i = 0; i < p.n; ++i)
    for (int j : mask_elements(p.up[i]))
      if (i != j && p.leq(j, i)) throw AntisymmetryViolation(labels[i], labels[j]);
  return p;
}

int MeetSemilattice::meet_all(Mask m) const {
  auto elems = mask_elements(m);
  int acc = elems.at(0);
  for (std::size_t k = 1; k < elems.size(); ++k) acc = meet(acc, elems[k]);
  return acc;
}

int MeetSemilattice::bottom() const { return meet_all(full_mask(n())); }

namespace {

// Greatest element of the subset `candidates`, or -1 when there is none.
int greatest_of(const Poset& p, Mask candidates) {
  for (int g : mask_elements(candidates)) {
    bool above_all = true;
    for (int k : mask_elements(candidates))
      if (!p.leq(k, g)) {
        above_all = false;
        break;
      }
    if (above_all) return g;
  }
  return -1;
}

int least_of(const Poset& p, Mask candidates) {
  for (int l : mask_elements(candidates))
    if (subset_of(candidates, p.up[l])) return l;
  return -1;
}

}  // namespace

MeetSemilattice meet_structure(const Poset& p) {
  MeetSemilattice sl;
  sl.poset = p;
  sl.meet_table.assign(std::size_t(p.n) * p.n, -1);
  std::vector<Mask> down(p.n, 0);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      if (p.leq(i, j)) down[j] |= mask_bit(i);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) {
      Mask lower = down[i] & down[j];
      if (lower == 0) throw NoMeet(i, j, "no lower bound");
      int g = greatest_of(p, lower);
      if (g < 0) throw NoMeet(i, j, "incomparable maximal lower bounds");
      sl.meet_table[std::size_t(i) * p.n + j] = g;
    }
  return sl;
}

BoundedLattice lattice_structure(const Poset& p) {
  BoundedLattice l;
  l.sl = meet_structure(p);
  l.join_table.assign(std::size_t(p.n) * p.n, -1);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) {
      Mask upper = p.up[i] & p.up[j];
      if (upper == 0) throw NoJoin(i, j, "no upper bound");
      int g = least_of(p, upper);
      if (g < 0) throw NoJoin(i, j, "incomparable minimal upper bounds");
      l.join_table[std::size_t(i) * p.n + j] = g;
    }
  Mask above_all = full_mask(p.n);
  for (int i = 0; i < p.n; ++i) above_all &= p.up[i];
  l.top = least_of(p, above_all);
  if (l.top < 0) throw NoTop();
  Mask below_all = full_mask(p.n);
  for (int i = 0; i < p.n; ++i) {
    Mask down_i = 0;
    for (int k = 0; k < p.n; ++k)
      if (p.leq(k, i)) down_i |= mask_bit(k);
    below_all &= down_i;
  }
  l.bottom = greatest_of(p, below_all);
  if (l.bottom < 0) throw NoBottom();
  return l;
}

bool has_binary_joins(const Poset& p) {
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) {
      Mask upper = p.up[i] & p.up[j];
      if (upper == 0 || least_of(p, upper) < 0) return false;
    }
  return true;
}

bool is_filter(const MeetSemilattice& sl, Mask s) {
  for (int i : mask_elements(s)) {
    if (!subset_of(sl.up(i), s)) return false;
    for (int j : mask_elements(s))
      if (!mask_has(s, sl.meet(i, j))) return false;
  }
  return true;
}

Filter make_filter(const MeetSemilattice& sl, Mask members) {
  Filter f;
  f.members = members;
  f.gen = members == 0 ? -1 : sl.meet_all(members);
  return f;
}

Filter generated_filter(const MeetSemilattice& sl, Mask seed) {
  // Fixpoint: alternate meet-closure and up-closure until stable.
  Mask m = seed;
  bool changed = true;
  while (changed) {
    changed = false;
    Mask next = m;
    for (int i : mask_elements(m)) {
      next |= sl.up(i);
      for (int j : mask_elements(m)) next |= mask_bit(sl.meet(i, j));
    }
    if (next != m) {
      m = next;
      changed = true;
    }
  }
  return make_filter(sl, m);
}

Filter filter_join(const MeetSemilattice& sl, std::span<const Filter> fs) {
  Mask seed = 0;
  for (const Filter& f : fs) seed |= f.members;
  return generated_filter(sl, seed);
}

Mask filter_join_masks(const MeetSemilattice& sl, Mask a, Mask b) {
  return generated_filter(sl, a | b).members;
}

std::vector<Filter> all_filters(const MeetSemilattice& sl) {
  if (sl.n() > kMaxElements)
    throw BoundExceeded("filter enumeration on " + std::to_string(sl.n()) + " elements");
  std::vector<Filter> out;
  for (Mask s = 0; s <= full_mask(sl.n()); ++s)
    if (is_filter(sl, s)) out.push_back(make_filter(sl, s));
  return out;
}

std::vector<Filter> principal_filters(const MeetSemilattice& sl) {
  std::vector<Filter> out;
  for (const Filter& f : all_filters(sl))
    if (f.empty() || f.members == sl.up(f.gen)) out.push_back(f);
  return out;
}

int ComplexAlgebra::elem_of(Mask filter) const {
  auto it = std::lower_bound(filter_of_elem.begin(), filter_of_elem.end(), filter);
  if (it == filter_of_elem.end() || *it != filter) return -1;
  return int(it - filter_of_elem.begin());
}

ComplexAlgebra complex_algebra(const MeetSemilattice& sl) {
  ComplexAlgebra ca;
  std::vector<Filter> fs = all_filters(sl);
  int m = int(fs.size());
  if (m > kMaxElements)
    throw BoundExceeded("complex algebra with " + std::to_string(m) + " filters");
  ca.filter_of_elem.reserve(fs.size());
  for (const Filter& f : fs) ca.filter_of_elem.push_back(f.members);

  Poset p;
  p.n = m;
  p.labels.reserve(fs.size());
  for (const Filter& f : fs) p.labels.push_back(sl.poset.label_set(f.members));
  p.up.assign(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (subset_of(fs[i].members, fs[j].members)) p.up[i] |= mask_bit(j);

  BoundedLattice& lat = ca.lat;
  lat.sl.poset = p;
  lat.sl.meet_table.assign(std::size_t(m) * m, -1);
  lat.join_table.assign(std::size_t(m) * m, -1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      lat.sl.meet_table[std::size_t(i) * m + j] = ca.elem_of(fs[i].members & fs[j].members);
      lat.join_table[std::size_t(i) * m + j] =
          ca.elem_of(filter_join_masks(sl, fs[i].members, fs[j].members));
    }
  lat.bottom = 0;  // the empty filter has the least mask
  lat.top = ca.elem_of(full_mask(sl.n()));
  return ca;
}

LatticeProps lattice_props(const BoundedLattice& l) {
  LatticeProps props{true, true};
  int n = l.n();
  for (int x = 0; x < n && (props.distributive || props.modular); ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)))
          props.distributive = false;
        if (l.leq(x, z) && l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z))
          props.modular = false;
      }
  return props;
}

static void check_total(const std::vector<int>& f, const MeetSemilattice& X,
                        const MeetSemilattice& Y) {
  if (int(f.size()) != X.n()) throw NotTotal("domain size mismatch");
  for (int v : f)
    if (v < 0 || v >= Y.n()) throw NotTotal("value out of range");
}

bool is_L_morphism(const std::vector<int>& f, const MeetSemilattice& X,
                   const MeetSemilattice& Y) {
  check_total(f, X, Y);
  for (int x = 0; x < X.n(); ++x)
    for (int y = 0; y < X.n(); ++y)
      if (f[X.meet(x, y)] != Y.meet(f[x], f[y])) return false;
  for (int x = 0; x < X.n(); ++x)
    for (int yp = 0; yp < Y.n(); ++yp)
      for (int zp = 0; zp < Y.n(); ++zp) {
        if (!Y.leq(Y.meet(yp, zp), f[x])) continue;
        bool found = false;
        for (int y = 0; y < X.n() && !found; ++y)
          for (int z = 0; z < X.n() && !found; ++z)
            if (Y.leq(yp, f[y]) && Y.leq(zp, f[z]) && X.leq(X.meet(y, z), x))
              found = true;
        if (!found) return false;
      }
  return true;
}

bool preimage_is_lattice_hom(const std::vector<int>& f, const MeetSemilattice& X,
                             const MeetSemilattice& Y) {
  check_total(f, X, Y);
  auto preimage = [&](Mask b) {
    Mask a = 0;
    for (int x = 0; x < X.n(); ++x)
      if (mask_has(b, f[x])) a |= mask_bit(x);
    return a;
  };
  std::vector<Filter> fy = all_filters(Y);
  for (const Filter& b : fy)
    if (!is_filter(X, preimage(b.members))) return false;
  for (const Filter& a : fy)
    for (const Filter& b : fy) {
      Mask lhs = preimage(filter_join_masks(Y, a.members, b.members));
      Mask rhs = filter_join_masks(X, preimage(a.members), preimage(b.members));
      if (lhs != rhs) return false;
    }
  return true;
}

}  // namespace latlog
