#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>

namespace wrenyi::num {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_depth = 60;
  int max_intervals = 4000;
  int max_de_level = 8;
};

enum class QuadStatus { converged, tolerance_not_met, divergent };

std::string to_string(QuadStatus s);

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
  QuadStatus status = QuadStatus::converged;
  long evaluations = 0;

  bool ok() const { return status != QuadStatus::divergent; }
};

struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool finite() const;
  bool contains(double x) const { return x >= lo && x <= hi; }
  double length() const { return hi - lo; }
};

using Integrand = std::function<double(double)>;

// Integral of fn over dom. Finite pieces between breakpoints use globally
// adaptive 15-point Gauss-Kronrod after a cubic endpoint-smoothing change of
// variable; infinite tails use the exp-sinh transform. hints are split
// points (kinks, singularities); hints outside dom are ignored.
IntegralResult integrate(const Integrand& fn, Interval dom,
                         std::span<const double> hints = {},
                         const QuadratureConfig& cfg = {});

// Same, with the result checked: throws DomainError if divergent.
double integrate_value(const Integrand& fn, Interval dom,
                       std::span<const double> hints = {},
                       const QuadratureConfig& cfg = {});

}  // namespace wrenyi::num
