#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace tik {

// Quick runs a reduced sample of every criterion; Full runs the acceptance sizes.
enum class Level { Quick, Full };
Level level_from_name(const std::string& s);
const char* level_name(Level l);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

inline constexpr int kCriterionCount = 7;

// Criteria 1..6 write seed-determined lines to `log`: counts and artifact digests, never timings.
// Criterion 7 reruns 1..6 twice into fresh logs and compares the bytes.
CriterionResult run_criterion(int id, Level level, std::ostream& log);

// Runs 1..7. Criterion 7 compares a rerun of 1..6 against the logs this call already produced.
std::vector<CriterionResult> run_selftest(Level level, std::ostream& log,
                                          const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace tik
