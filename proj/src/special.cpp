#include "wrenyi/special.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "wrenyi/errors.hpp"

namespace wrenyi::num {

double gamma_fn(double x) {
  if (std::isnan(x)) throw InputError("gamma_fn: NaN argument");
  if (!(x > 0.0)) throw InputError("gamma_fn: argument must be positive, got " + std::to_string(x));
  return std::tgamma(x);
}

double log_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw DomainError("log_gamma: pole at " + std::to_string(x));
  return std::lgamma(x);
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InputError("beta_fn: shapes must be positive");
  if (a + b < 170.0) {
    // Product of the two numerator factors is commutative, so B(a,b) == B(b,a).
    return (std::tgamma(a) * std::tgamma(b)) / std::tgamma(a + b);
  }
  return std::exp(log_beta(a, b));
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InputError("log_beta: shapes must be positive");
  return (std::lgamma(a) + std::lgamma(b)) - std::lgamma(a + b);
}

double ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

double ibetac(double a, double b, double x) {
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  return boost::math::ibetac(a, b, x);
}

double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(a, x);
}

double gamma_q(double a, double x) {
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(a, x);
}

double ibeta_inv(double a, double b, double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return boost::math::ibeta_inv(a, b, u);
}

double gamma_p_inv(double a, double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return std::numeric_limits<double>::infinity();
  return boost::math::gamma_p_inv(a, u);
}

double beta_pdf(double a, double b, double x) {
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b));
}

double gamma_pdf(double shape, double x) {
  if (!(x > 0.0)) return 0.0;
  return std::exp((shape - 1.0) * std::log(x) - x - std::lgamma(shape));
}

}  // namespace wrenyi::num
