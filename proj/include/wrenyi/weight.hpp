#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wrenyi/density.hpp"

namespace wrenyi {

enum class WeightFamily {
  constant,
  exp_linear,
  power,
  abs_polynomial,
  density_polynomial,
  density_power,
  composed,
  power_of,
  product,
  derived,
};

std::string to_string(WeightFamily f);

// A monotone change of variable x -> s(x) with its derivative.
struct MapFn {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::string name;
};

MapFn identity_map();
MapFn linear_map(double ratio);

class WeightModel {
 public:
  virtual ~WeightModel() = default;
  virtual double value(double x) const = 0;
  virtual double derivative(double x) const = 0;
  virtual WeightFamily family() const = 0;
  virtual std::string descriptor() const = 0;
  // Closed-form antiderivative psi(x) = int_0^x phi, when the family has one.
  virtual std::optional<double> psi(double) const { return std::nullopt; }
  // phi(x) = scale * exp(gamma x) exactly (constants have gamma = 0).
  virtual bool exp_linear(double* /*scale*/, double* /*gamma*/) const { return false; }

  const std::vector<double>& hints() const { return hints_; }
  const ParamList& params() const { return params_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 protected:
  std::vector<double> hints_;
  ParamList params_;
  std::vector<std::string> warnings_;
};

// Immutable handle to a weight function phi and its derivative.
class WeightFunction {
 public:
  explicit WeightFunction(std::shared_ptr<const WeightModel> model);

  double operator()(double x) const { return m_->value(x); }
  double value(double x) const { return m_->value(x); }
  double derivative(double x) const { return m_->derivative(x); }
  WeightFamily family() const { return m_->family(); }
  std::string descriptor() const { return m_->descriptor(); }
  const std::vector<double>& hints() const { return m_->hints(); }
  const ParamList& params() const { return m_->params(); }
  double param(std::string_view name) const;
  bool has_param(std::string_view name) const;
  const std::vector<std::string>& warnings() const { return m_->warnings(); }
  const WeightModel& model() const { return *m_; }

  // True for the constant family (phi == v).
  bool is_constant() const { return family() == WeightFamily::constant; }
  // For exp-linear and constant weights: phi(x) = scale * exp(gamma x).
  bool exp_linear_form(double* scale, double* gamma) const;

 private:
  std::shared_ptr<const WeightModel> m_;
};

WeightFunction make_constant_weight(double v = 1.0);
WeightFunction make_exp_weight(double gamma);
WeightFunction make_power_weight(double c);
WeightFunction make_abs_polynomial_weight(std::vector<double> coeffs);
WeightFunction make_density_polynomial_weight(const Density& f, std::vector<double> coeffs);
// f^k |f'|^m.
WeightFunction make_density_power_weight(const Density& f, double k, double m);
// phi(s(x)) with derivative s'(x) phi'(s(x)).
WeightFunction compose_with_map(const WeightFunction& phi, const MapFn& s);
// phi^r with derivative r phi^{r-1} phi'.
WeightFunction power_of(const WeightFunction& phi, double r);
WeightFunction product(const WeightFunction& a, const WeightFunction& b);
// Arbitrary evaluator pair, for derived weights with displayed derivative formulas.
WeightFunction make_derived_weight(std::function<double(double)> value,
                                   std::function<double(double)> derivative, std::string name,
                                   std::vector<double> hints = {});

// phi*(x) = phi(ratio x), ratio = sigma_f / sigma_G.
WeightFunction derive_phi_star(const WeightFunction& phi, double sigma_f, double sigma_g);

struct RhoPair {
  WeightFunction rho1;  // phi^{alpha/(1-p)}
  WeightFunction rho2;  // phi^{p beta/(p-1)}
  double exponent1;
  double exponent2;
};
RhoPair derive_rho12(const WeightFunction& phi, double alpha, double p);

// rho_s = (phi(s(x)) / phi(x)^p)^{1/(1-p)} with derivative
// rho_s [ s' phi'(s) / ((1-p) phi(s)) + p phi' / ((p-1) phi) ].
WeightFunction derive_rho_s(const WeightFunction& phi, const MapFn& s, double p);

struct Antiderivatives {
  std::function<double(double)> psi;      // int_0^x phi
  std::function<double(double)> psi_bar;  // int_0^x phi'
};
Antiderivatives antiderivatives(const WeightFunction& phi);

// Hoelder conjugate: 1/alpha + 1/beta = 1 (alpha = 1 -> inf, alpha = inf -> 1).
double holder_conjugate(double alpha);

}  // namespace wrenyi
