#pragma once

#include <optional>
#include <span>
#include <string>

#include "latlog/fol.hpp"

namespace latlog {

// Constant folding, true/false absorption, one-point quantifier elimination
// and singleton-abovemeet collapse. Every rewrite preserves fo_eval on
// (nonempty) posets; no general first-order reasoning.
FO simplify_fo(const FO& f);

// Local first-order correspondent of a consequence pair, with the free world
// variable "x": the pair holds at w in a frame iff the correspondent holds
// under x := w. Throws NotSahlqvist when the (normalized) antecedent is
// modal but not a Sahlqvist antecedent.
FO sahlqvist_correspondent(const ConsequencePair& pair);

// The same formula before the simplifier runs (used to cross-check that
// simplification preserves evaluation).
FO sahlqvist_correspondent_raw(const ConsequencePair& pair);

struct Discrepancy {
  int frame_index = -1;
  std::string frame_desc;
  bool frame_valid = false;  // correspondent evaluated to the opposite
};

struct CorrespondenceReport {
  ConsequencePair pair;
  FO correspondent;
  int frames_checked = 0;
  bool equivalent = true;
  std::optional<Discrepancy> discrepancy;
};

CorrespondenceReport correspondence_check(const ConsequencePair& pair,
                                          std::span<const MeetSemilattice> frames);
CorrespondenceReport correspondence_check(const ConsequencePair& pair,
                                          std::span<const ModalLFrame> frames);

}  // namespace latlog
