#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latlog/prover.hpp"
#include "latlog/semantics.hpp"

namespace latlog {

/// On-disk frame/model description. The order is given either as leq_pairs
/// (reflexive-transitive closure is taken) or as a full meet table.
struct FrameDocument {
  std::string version = "1";
  std::vector<std::string> elements;
  std::optional<std::vector<std::pair<std::string, std::string>>> leq_pairs;
  std::optional<std::vector<std::vector<std::string>>> meet;
  std::optional<std::vector<std::pair<std::string, std::string>>> r;
  std::optional<std::map<std::string, std::vector<std::string>>> valuation;
};

FrameDocument framedoc_parse(const std::string& json_text);
std::string framedoc_dump(const FrameDocument& doc);

FrameDocument framedoc_of(const MeetSemilattice& sl);
FrameDocument framedoc_of(const ModalLFrame& frame);

// Structure construction; errors carry the offending label/table position.
MeetSemilattice to_semilattice(const FrameDocument& doc);
BoundedLattice to_lattice(const FrameDocument& doc);
ModalLFrame to_modal_frame(const FrameDocument& doc);  // requires "R"
Valuation to_valuation(const FrameDocument& doc, const MeetSemilattice& sl);

Derivation derivation_parse(const std::string& json_text);

}  // namespace latlog
