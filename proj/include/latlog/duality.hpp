#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latlog/order.hpp"
#include "latlog/semantics.hpp"

namespace latlog {

// At finite scale the topology is discrete: every filter is clopen, the
// closed filters (principal ones) are all filters, and the saturated filters
// coincide with both, so the symbols tau, F_clp, F_k and F_sat all name
// all_filters / principal_filters here. For the same reason the canonical
// extension (saturated filters) is not a separate construction: it coincides
// with f2_completion, and the closed-filter completion coincides with
// filter_completion. No finite structure separates the three.

/// Dual frame of a bounded lattice: the non-empty proper filters under
/// inclusion, with intersection as meet, plus the embedding theta.
struct DualityResult {
  MeetSemilattice dual;
  std::vector<Mask> point_filter;  // dual point index -> filter of A (mask over A)
  std::vector<Mask> theta;         // A element -> filter of the dual (mask over dual)
  std::vector<Mask> modal_rel;     // R_A rows; empty unless built by modal_dual
};

DualityResult dual_frame(const BoundedLattice& a);

struct IsoReport {
  bool is_iso = false;
  std::vector<int> map;  // domain element -> codomain element when is_iso
  std::string failure;   // witness description otherwise
};

// theta : A -> complex_algebra(dual_frame(A)) is a bounded-lattice
// isomorphism, join clause included.
IsoReport double_dual_check(const BoundedLattice& a);

// eta : X -> nonempty proper filters of the complex algebra of X is an
// order- and meet-isomorphism.
IsoReport frame_double_dual_check(const MeetSemilattice& sl);

enum class CompletionKind { FilterCompletion, F2Completion };

struct Completion {
  BoundedLattice lattice;
  std::vector<int> embed;  // original element -> completion element
  CompletionKind kind = CompletionKind::FilterCompletion;
};

// Non-empty filters under reverse inclusion; meet is the filter join, join
// is intersection, the embedding sends x to its up-set.
Completion filter_completion(const BoundedLattice& a);

// All filters of the dual frame, embedded by theta.
Completion f2_completion(const BoundedLattice& a);

// Is the embedding of the completion a (bounded-lattice) isomorphism onto it?
IsoReport completion_iso(const BoundedLattice& a, const Completion& c);

// Tightness of the relation: x R y iff every filter a satisfies both
// "R[x] in a implies y in a" and "y in a implies R[x] meets a". A finite
// modal L-frame is (the frame of) a finite modal L-space exactly when its
// relation is tight; dualizing always recovers the tight closure of R.
std::vector<Mask> tight_closure(const MeetSemilattice& sl, const std::vector<Mask>& rel);
bool is_tight(const MeetSemilattice& sl, const std::vector<Mask>& rel);

// Dual modal frame of a modal lattice: R_A relates p to q when
// box^-1(p) <= q <= dia^-1(p). Verifies the frame conditions, the principal
// conditions, and the two modal duality equations.
std::pair<ModalLFrame, DualityResult> modal_dual(const ModalLattice& m);

// Lattice of (principal) filters of a modal frame with box/dia from box_dia.
ModalLattice modal_complex_algebra(const ModalLFrame& f, VClass vclass);

}  // namespace latlog
