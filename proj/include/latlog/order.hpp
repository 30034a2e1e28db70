#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "latlog/errors.hpp"

namespace latlog {

// Subsets of a carrier with n <= kMaxElements elements are value-semantic
// bit masks: bit i set means element i is in the subset.
using Mask = std::uint32_t;

inline constexpr int kMaxElements = 20;

inline bool mask_has(Mask m, int i) { return (m >> i) & 1u; }
inline Mask mask_bit(int i) { return Mask{1} << i; }
inline Mask full_mask(int n) { return n == 0 ? 0 : (Mask{1} << n) - 1; }
inline int mask_size(Mask m) { return std::popcount(m); }
inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

// Elements of the subset in increasing order.
std::vector<int> mask_elements(Mask m);

/// Finite poset: dense element indices 0..n-1 with string labels for I/O.
struct Poset {
  std::vector<std::string> labels;
  int n = 0;
  // up[i] = { j : i <= j }; leq is stored row-wise as up-set masks.
  std::vector<Mask> up;

  bool leq(int i, int j) const { return mask_has(up[i], j); }
  int index_of(const std::string& label) const;
  std::string label_set(Mask m) const;  // "{a,b}" style, for reports
};

// Builds the reflexive-transitive closure of the given pairs over the labels.
// Fails if the closure is not antisymmetric.
Poset validate_poset(const std::vector<std::string>& labels,
                     const std::vector<std::pair<std::string, std::string>>& leq_pairs);

// Closure/check on an up-set matrix directly (used by enumeration and I/O).
bool is_partial_order(const std::vector<Mask>& up, int n);

struct MeetSemilattice {
  Poset poset;
  std::vector<int> meet_table;  // n*n, row-major

  int n() const { return poset.n; }
  bool leq(int i, int j) const { return poset.leq(i, j); }
  int meet(int i, int j) const { return meet_table[std::size_t(i) * poset.n + j]; }
  Mask up(int i) const { return poset.up[i]; }
  int meet_all(Mask m) const;  // meet of a nonempty subset
  int bottom() const;          // finite semilattices always have one
};

// Fills the meet table with greatest lower bounds; NoMeet if a pair lacks one.
MeetSemilattice meet_structure(const Poset& p);

struct BoundedLattice {
  MeetSemilattice sl;
  std::vector<int> join_table;
  int top = -1;
  int bottom = -1;

  int n() const { return sl.n(); }
  bool leq(int i, int j) const { return sl.leq(i, j); }
  int meet(int i, int j) const { return sl.meet(i, j); }
  int join(int i, int j) const { return join_table[std::size_t(i) * sl.n() + j]; }
};

BoundedLattice lattice_structure(const Poset& p);

// Does every pair of p have a least upper bound? (Cheap probe used before
// treating a semilattice as a principal frame.)
bool has_binary_joins(const Poset& p);

/// A filter: up-closed, meet-closed subset. gen caches the minimum element
/// (-1 for the empty filter); on finite carriers every filter is principal.
struct Filter {
  Mask members = 0;
  int gen = -1;

  bool empty() const { return members == 0; }
  bool principal() const { return true; }
  bool operator==(const Filter&) const = default;
};

bool is_filter(const MeetSemilattice& sl, Mask s);

// Wraps a mask known to satisfy is_filter, caching the generator.
Filter make_filter(const MeetSemilattice& sl, Mask members);

// Least filter containing the seed set; generated_filter(0) is the empty filter.
Filter generated_filter(const MeetSemilattice& sl, Mask seed);

// Least filter containing every member of fs; the empty list yields the
// empty filter (the identity of the join).
Filter filter_join(const MeetSemilattice& sl, std::span<const Filter> fs);
Mask filter_join_masks(const MeetSemilattice& sl, Mask a, Mask b);

// Every filter exactly once, sorted by ascending bit-mask value.
std::vector<Filter> all_filters(const MeetSemilattice& sl);

// The principal filters in the same canonical order. On finite carriers this
// coincides with all_filters; kept as its own operation because valuation
// classes select it by name.
std::vector<Filter> principal_filters(const MeetSemilattice& sl);

/// The bounded lattice of all filters of a semilattice: meet is intersection,
/// join is filter_join, top the full carrier, bottom the empty filter.
struct ComplexAlgebra {
  BoundedLattice lat;
  std::vector<Mask> filter_of_elem;  // lattice element index -> filter mask

  int elem_of(Mask filter) const;  // index in the canonical order
};

ComplexAlgebra complex_algebra(const MeetSemilattice& sl);

struct LatticeProps {
  bool distributive = false;
  bool modular = false;
};

LatticeProps lattice_props(const BoundedLattice& l);

// f maps indices of X to indices of Y. True iff f preserves meets and, for
// all y', z' in Y with y' /\ z' <= f(x), there are y, z in X with
// y' <= f(y), z' <= f(z) and y /\ z <= x.
bool is_L_morphism(const std::vector<int>& f, const MeetSemilattice& X,
                   const MeetSemilattice& Y);

// Companion check: the preimage map sends filters to filters and preserves
// the filter join (so it is a lattice homomorphism between the complex
// algebras). is_L_morphism implies this; the converse can fail.
bool preimage_is_lattice_hom(const std::vector<int>& f, const MeetSemilattice& X,
                             const MeetSemilattice& Y);

}  // namespace latlog
