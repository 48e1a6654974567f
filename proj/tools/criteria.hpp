#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "commands.hpp"

namespace wrenyi::app {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

constexpr int kCriteria = 14;

// Runs acceptance criterion k (1..14). Never throws: failures to evaluate
// become a failed result with the message in detail.
CriterionResult run_criterion(int k, std::uint64_t seed = 42);

struct ReproBundle {
  std::string id;
  std::vector<std::string> aliases;
  std::string description;
  std::vector<int> criteria;  // 0 marks the parabola-bound check, which is not a criterion
};
const std::vector<ReproBundle>& repro_bundles();

// Extra bundled check: the parabola moment bound at G_{2,2}, expected to be
// an equality.
CriterionResult run_parabola_check();

Json to_json(const CriterionResult& r);
Outcome cmd_repro(const std::string& id, std::uint64_t seed);

}  // namespace wrenyi::app
