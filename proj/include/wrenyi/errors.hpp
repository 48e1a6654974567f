#pragma once

#include <stdexcept>
#include <string>

namespace wrenyi {

// Malformed descriptors, out-of-range orders, unknown ids. Maps to CLI exit 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Divergent integrals, invalid parameter regions, unbounded suprema. Exit 3.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Numerical machinery failed (no sign change in a bracket, non-finite value).
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wrenyi
