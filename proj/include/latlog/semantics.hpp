#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latlog/formula.hpp"
#include "latlog/order.hpp"

namespace latlog {

using Valuation = std::map<std::string, Mask>;

struct LModel {
  MeetSemilattice sl;
  Valuation val;  // every image must pass is_filter
};

struct ModalLFrame {
  MeetSemilattice sl;
  std::vector<Mask> rel;  // rel[x] = successor mask
  bool checked = false;   // set once modal_frame_check has passed

  int n() const { return sl.n(); }
};

struct ModalLModel {
  ModalLFrame frame;
  Valuation val;
};

// ([R]a, <R>a) by direct definition.
std::pair<Mask, Mask> box_dia(const ModalLFrame& f, Mask a);

struct CondResult {
  bool ok = true;
  std::string witness;  // first counterexample, empty when ok
};

/// Per-condition report for the modal frame conditions (1)-(5), and for the
/// principal frame conditions (0)-(5) where (3) and (4) quantify over
/// arbitrary non-empty index sets (checked directly at finite scale).
struct ConditionReport {
  std::array<CondResult, 5> basic;      // conditions (1)..(5)
  CondResult principal0;                // binary joins (meets come free on finite carriers)
  std::array<CondResult, 5> principal;  // principal (1)..(5)

  bool basic_ok() const;
  bool principal_ok() const;
  std::string summary() const;
};

ConditionReport modal_frame_check(const MeetSemilattice& sl, const std::vector<Mask>& rel);

// Conditions (1)-(5) as a plain predicate, without witness bookkeeping. On
// finite carriers this also settles the principal conditions (they reduce to
// the binary cases by meet-composition; (0) holds via iterated meets).
bool modal_frame_conditions_ok(const MeetSemilattice& sl, const std::vector<Mask>& rel);

// Throws FrameConditionViolated unless conditions (1)-(5) hold.
ModalLFrame make_modal_frame(MeetSemilattice sl, std::vector<Mask> rel);

// Truth set of f. The valuation must cover the letters of f; modal nodes
// need the modal overload with a frame that passed modal_frame_check.
Mask eval_model(const LModel& m, const Formula& f);
Mask eval_model(const ModalLModel& m, const Formula& f);

/// Lattice with box/dia tables.
struct ModalLattice {
  BoundedLattice lat;
  std::vector<int> box, dia;
};

// First violated modal-lattice equation as text, or nullopt when all hold.
std::optional<std::string> modal_lattice_violation(const ModalLattice& m);

using Assignment = std::map<std::string, int>;

int eval_in_lattice(const BoundedLattice& a, const Assignment& sigma, const Formula& f);
int eval_in_lattice(const ModalLattice& a, const Assignment& sigma, const Formula& f);

enum class VClass { AllFilters, PrincipalFilters };

struct Witness {
  Valuation valuation;
  int state = -1;
};

struct Verdict {
  bool valid = true;
  std::optional<Witness> witness;  // first countermodel in canonical order
};

inline constexpr long long kDefaultBudget = 10'000'000;

// Exhaustive check over valuations of the letters occurring in the pair.
// Valuations run over all filters (or principal filters) in canonical order,
// first letter most significant; the witness state is the least index in
// the truth-set difference.
Verdict frame_validity(const MeetSemilattice& frame, const ConsequencePair& pair,
                       VClass vclass, long long budget = kDefaultBudget);
Verdict frame_validity(const ModalLFrame& frame, const ConsequencePair& pair,
                       VClass vclass, long long budget = kDefaultBudget);

// is_L_morphism on the carriers plus the forth/back-below/back-above
// conditions on the relations.
bool is_bounded_L_morphism(const std::vector<int>& f, const ModalLFrame& F1,
                           const ModalLFrame& F2);

// ---------------------------------------------------------------------------
// Frame enumeration

enum class FrameKind { Semilattice, Lattice, Modal };

struct EnumeratedFrame {
  MeetSemilattice sl;
  std::vector<Mask> rel;  // filled for FrameKind::Modal only
};

/// Deterministic stream of frames on n labeled elements (labels "0".."n-1").
/// Labeled mode scans every order matrix in ascending row-major encoding;
/// up_to_iso emits one canonical representative per isomorphism class, in
/// ascending canonical encoding. Modal frames pair each semilattice with
/// every relation passing conditions (1)-(5), relations in ascending
/// row-major encoding.
void enumerate_frames(int n, FrameKind kind, bool up_to_iso,
                      const std::function<void(const EnumeratedFrame&)>& fn);

// Bounds accepted by enumerate_frames before it throws BoundExceeded.
int enumeration_bound(FrameKind kind, bool up_to_iso);

// Row-major encodings used for canonical ordering (exposed for tests).
std::uint64_t encode_order(const std::vector<Mask>& up, int n);
std::uint64_t encode_rel(const std::vector<Mask>& rel, int n);

}  // namespace latlog
