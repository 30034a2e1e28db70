#pragma once

#include <string>
#include <vector>

#include "latlog/order.hpp"

namespace latlog {

// Small structures used throughout the tests and the acceptance suite.

inline MeetSemilattice chain_sl(int n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(labels[i], labels[i + 1]);
  return meet_structure(validate_poset(labels, pairs));
}

inline BoundedLattice chain_lat(int n) {
  return lattice_structure(chain_sl(n).poset);
}

// 0 < a, 0 < b with a, b incomparable; a semilattice but not a lattice.
inline MeetSemilattice v_sl() {
  return meet_structure(validate_poset({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}}));
}

// Bottom below three incomparable atoms; its filter lattice is M3.
inline MeetSemilattice claw_sl() {
  return meet_structure(
      validate_poset({"0", "a", "b", "c"}, {{"0", "a"}, {"0", "b"}, {"0", "c"}}));
}

// 0 < a,b,c < 1 with a, b, c pairwise incomparable.
inline BoundedLattice m3_lattice() {
  return lattice_structure(validate_poset(
      {"0", "a", "b", "c", "1"},
      {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}}));
}

// 0 < a < c < 1 and 0 < b < 1.
inline BoundedLattice n5_lattice() {
  return lattice_structure(validate_poset(
      {"0", "a", "b", "c", "1"},
      {{"0", "a"}, {"a", "c"}, {"c", "1"}, {"0", "b"}, {"b", "1"}}));
}

}  // namespace latlog
