#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latlog/formula.hpp"
#include "latlog/semantics.hpp"

namespace latlog {

// Decides lhs <= rhs in the free bounded lattice (equivalently, validity in
// every lattice) by structural recursion with Whitman's condition for the
// mixed case. Modality-free pairs only.
bool whitman_decide(const ConsequencePair& pair);

struct Derivation {
  ConsequencePair conclusion;
  std::string rule;
  std::vector<Derivation> premises;
};

// Names accepted as rules, with their premise counts.
std::vector<std::pair<std::string, int>> derivation_rules();

// True iff every node instantiates its named rule exactly. Throws
// UnknownRule / ShapeMismatch with the offending node path.
bool check_derivation(const Derivation& d);

struct Countermodel {
  MeetSemilattice sl;
  std::vector<Mask> rel;  // empty for non-modal searches
  Valuation valuation;
  int state = -1;
  int n = 0;
};

// First frame (in enumeration order, by increasing size) of the given kind
// falsifying the pair, together with the first countermodel valuation/state.
// Non-modal searches default to lattice frames.
std::optional<Countermodel> countermodel_search(const ConsequencePair& pair, int max_n,
                                                FrameKind kind = FrameKind::Lattice);

}  // namespace latlog
