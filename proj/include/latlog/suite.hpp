#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latlog/semantics.hpp"

namespace latlog {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions {
  int threads = 1;          // criteria run in parallel when > 1
  std::uint32_t seed = 20;  // seed of the sampled property checks
};

// Precomputed frame inventories shared by the criteria.
struct SuiteContext {
  std::vector<BoundedLattice> lattices_iso;        // n = 1..6, canonical order
  std::vector<int> lattice_counts;                 // per n, 1-based at index n
  std::vector<MeetSemilattice> semilattices_iso;   // n = 1..5
  std::vector<int> semilattice_counts;
  std::vector<MeetSemilattice> labeled_sls;        // n = 1..4
  std::vector<ModalLFrame> modal_frames;           // labeled, n = 1..4, checked
  std::vector<bool> modal_principal;               // principal conditions flag
  std::uint32_t seed = 20;
};

SuiteContext build_suite_context(std::uint32_t seed);

// Criteria 1..11 plus the parser round-trip half of criterion 12.
std::vector<CriterionResult> run_criteria(const SuiteContext& ctx, int threads);

// Full suite: runs the criteria once sequentially and once with the given
// thread count, folds the report comparison into criterion 12, and returns
// the final report (one line per criterion plus an overall line).
struct SuiteReport {
  std::vector<CriterionResult> results;
  std::string text;
  bool all_pass = false;
};

SuiteReport run_suite(const SuiteOptions& opts);

std::string format_criteria(const std::vector<CriterionResult>& rs);

}  // namespace latlog
