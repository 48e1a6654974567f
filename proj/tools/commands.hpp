#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "report.hpp"
#include "wrenyi/inequalities.hpp"
#include "wrenyi/measures.hpp"

namespace wrenyi::app {

enum ExitCode : int { kOk = 0, kInputError = 2, kDomainError = 3, kAcceptanceFailure = 4 };

// Flag values shared by compute, verify and sweep rows. Empty descriptors
// mean "not given"; a missing weight defaults to const:1.
struct Inputs {
  std::string f, g, w;
  std::optional<double> p, alpha, c, t, tol;
  std::uint64_t seed = 42;
};

Json to_json(const Inputs& in);

// Accepts the canonical names below plus short aliases; InputError otherwise.
std::string canonical_measure(std::string_view id);
std::string canonical_check(std::string_view id);
const std::vector<std::string>& measure_names();
const std::vector<std::string>& check_names();
// Verdict ids a check produces, in order (fixed per check).
std::vector<std::string> verdict_ids(const std::string& check);

MeasureValue evaluate_measure(const std::string& measure, const Inputs& in);
// Verdicts in verdict_ids order; entries a parameter rules out are skipped.
std::vector<InequalityVerdict> evaluate_check(const std::string& check, const Inputs& in);

int exit_code(const std::exception& e);
Json error_json(const std::exception& e);

struct Outcome {
  Json report;
  int exit_code = kOk;
};

Outcome cmd_compute(std::string_view measure, const Inputs& in, bool with_oracle);
Outcome cmd_verify(std::string_view check, const Inputs& in);

}  // namespace wrenyi::app
