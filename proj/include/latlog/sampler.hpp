#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latlog/formula.hpp"

namespace latlog {

/// Deterministic seeded formula generator; the xorshift stream and modulo
/// draws keep samples identical across platforms and standard libraries.
struct FormulaSampler {
  std::uint32_t state;
  std::vector<std::string> letters;
  bool modal = false;

  explicit FormulaSampler(std::uint32_t seed, std::vector<std::string> ls, bool modal = false)
      : state(seed ? seed : 1), letters(std::move(ls)), modal(modal) {}

  std::uint32_t next() {
    // xorshift32; fixed algorithm, no library variance.
    std::uint32_t x = state;
    x ^= x << 13;
    x ^= x >> 17;
    x ^= x << 5;
    state = x;
    return x;
  }

  Formula sample(int max_depth) {
    if (max_depth == 0 || next() % 4 == 0) {
      std::uint32_t k = next() % (letters.size() + 2);
      if (k == letters.size()) return ftop();
      if (k == letters.size() + 1) return fbot();
      return fprop(letters[k]);
    }
    std::uint32_t k = next() % (modal ? 4 : 2);
    switch (k) {
      case 0: return fand(sample(max_depth - 1), sample(max_depth - 1));
      case 1: return forr(sample(max_depth - 1), sample(max_depth - 1));
      case 2: return fbox(sample(max_depth - 1));
      default: return fdia(sample(max_depth - 1));
    }
  }
};

}  // namespace latlog
