// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any failed.
// Usage: tik_acceptance [--level quick|full] [--criterion N] [--log FILE]
// The log holds only seed-determined content; per-criterion timings go to stderr.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "tik/selftest.hpp"

int main(int argc, char** argv) {
  tik::Level level = tik::Level::Full;
  int only = 0;
  std::string log_path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (i + 1 >= argc) {
      std::cerr << "missing value for " << arg << "\n";
      return 2;
    }
    const std::string value = argv[++i];
    try {
      if (arg == "--level") {
        level = tik::level_from_name(value);
      } else if (arg == "--criterion") {
        only = std::stoi(value);
      } else if (arg == "--log") {
        log_path = value;
      } else {
        std::cerr << "unknown option " << arg << "\n";
        return 2;
      }
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }

  std::ostringstream log;
  bool all = true;
  auto start = std::chrono::steady_clock::now();
  auto report = [&](const tik::CriterionResult& r) {
    const auto now = std::chrono::steady_clock::now();
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.id << " " << r.name << ": " << r.detail << std::endl;
    std::fprintf(stderr, "criterion %d took %.1f s\n", r.id, std::chrono::duration<double>(now - start).count());
    start = now;
    all = all && r.pass;
  };
  if (only != 0) {
    try {
      report(tik::run_criterion(only, level, log));
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  } else {
    tik::run_selftest(level, log, report);
  }
  if (!log_path.empty()) std::ofstream(log_path) << log.str();
  return all ? 0 : 1;
}
