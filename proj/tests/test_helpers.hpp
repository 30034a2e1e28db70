#pragma once

#include <string>
#include <vector>

#include "latlog/order.hpp"
#include "latlog/semantics.hpp"

namespace latlog::testing {

// Direct glb/lub/bounds verification of a lattice against its own order.
inline bool lattice_invariants_hold(const BoundedLattice& l) {
  const int n = l.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int m = l.meet(i, j), v = l.join(i, j);
      if (!l.leq(m, i) || !l.leq(m, j)) return false;
      if (!l.leq(i, v) || !l.leq(j, v)) return false;
      for (int k = 0; k < n; ++k) {
        if (l.leq(k, i) && l.leq(k, j) && !l.leq(k, m)) return false;
        if (l.leq(i, k) && l.leq(j, k) && !l.leq(v, k)) return false;
      }
      if (l.meet(i, l.join(i, j)) != i) return false;  // absorption
      if (l.join(i, l.meet(i, j)) != i) return false;
    }
  for (int i = 0; i < n; ++i)
    if (!l.leq(i, l.top) || !l.leq(l.bottom, i)) return false;
  return true;
}

// Filter predicate written out plainly, as the enumeration oracle.
inline bool naive_is_filter(const MeetSemilattice& sl, Mask s) {
  for (int i = 0; i < sl.n(); ++i) {
    if (!mask_has(s, i)) continue;
    for (int j = 0; j < sl.n(); ++j) {
      if (sl.leq(i, j) && !mask_has(s, j)) return false;
      if (mask_has(s, j) && !mask_has(s, sl.meet(i, j))) return false;
    }
  }
  return true;
}

inline Mask mask_of(const MeetSemilattice& sl, const std::vector<std::string>& labels) {
  Mask m = 0;
  for (const std::string& l : labels) m |= mask_bit(sl.poset.index_of(l));
  return m;
}

}  // namespace latlog::testing
