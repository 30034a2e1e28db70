// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure. The same engine backs the CLI's `suite` subcommand.

#include <cstdlib>
#include <iostream>
#include <thread>

#include "latlog/suite.hpp"

int main(int argc, char** argv) {
  int threads = int(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  std::uint32_t seed = 20;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--threads" && i + 1 < argc) threads = std::atoi(argv[++i]);
    else if (arg == "--seed" && i + 1 < argc) seed = std::uint32_t(std::atoi(argv[++i]));
  }
  latlog::SuiteReport rep = latlog::run_suite({threads, seed});
  std::cout << rep.text;
  return rep.all_pass ? 0 : 1;
}
