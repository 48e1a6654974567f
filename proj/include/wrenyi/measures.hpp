#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wrenyi/density.hpp"
#include "wrenyi/quadrature.hpp"
#include "wrenyi/weight.hpp"

namespace wrenyi {

// Entropy order p, moment order alpha in [0, inf] and its Hoelder conjugate.
struct OrderParams {
  double p = 1.0;
  double alpha = 2.0;
  double beta = 2.0;

  static OrderParams make(double p, double alpha);
};

// A named predicate with its margin. Strict predicates need margin > 0,
// non-strict ones margin >= 0 (within tol).
struct Flag {
  std::string name;
  double margin = 0.0;
  bool strict = true;

  bool satisfied(double tol = 0.0) const { return strict ? margin > 0.0 : margin >= -tol; }
};

struct MeasureValue {
  double value = 0.0;
  double error = 0.0;
  std::string branch;
  std::string method;
  std::vector<Flag> flags;
  std::vector<std::string> warnings;
  num::QuadStatus status = num::QuadStatus::converged;
  // Named intermediate quantities (integrals, raw Fisher integral, ...).
  std::vector<std::pair<std::string, double>> parts;

  double part(std::string_view name) const;
  double rel_error() const;
};

struct MeasureOptions {
  num::QuadratureConfig quad{};
  bool allow_closed_form = true;
};

// E_f[phi].
MeasureValue weighted_expectation(const Density& f, const WeightFunction& phi, const MeasureOptions& opt = {});
// int phi f^p.
MeasureValue weighted_power_integral(const Density& f, const WeightFunction& phi, double p,
                                     const MeasureOptions& opt = {});
// -int phi f log f.
MeasureValue weighted_entropy(const Density& f, const WeightFunction& phi, const MeasureOptions& opt = {});
// int phi f log(f/g).
MeasureValue relative_weighted_entropy(const Density& f, const Density& g, const WeightFunction& phi,
                                       const MeasureOptions& opt = {});
// (1/(1-p)) log int phi f^p; p = 1 is rejected.
MeasureValue weighted_renyi_entropy(const Density& f, const WeightFunction& phi, double p,
                                    const MeasureOptions& opt = {});
// exp of the above; at p = 1, exp(h_phi(f) / E_f[phi]).
MeasureValue weighted_renyi_power(const Density& f, const WeightFunction& phi, double p,
                                  const MeasureOptions& opt = {});
// D = (1/(1-p)) log int phi g^{p-1} f + (1/p) log int phi g^p - (1/(p(1-p))) log int phi f^p;
// at p = 1, D = int phi f log(f/g) / E_f[phi], with the margin E_f[phi] - E_g[phi].
MeasureValue relative_renyi_entropy(const Density& f, const Density& g, const WeightFunction& phi, double p,
                                    const MeasureOptions& opt = {});
MeasureValue relative_renyi_power(const Density& f, const Density& g, const WeightFunction& phi, double p,
                                  const MeasureOptions& opt = {});
// int phi |x|^alpha f, alpha in (0, inf).
MeasureValue generalized_moment(const Density& f, const WeightFunction& phi, double alpha,
                                const MeasureOptions& opt = {});
// alpha = 0: exp(int phi f log|x| / E_f[phi]); (0, inf): moment^{1/alpha};
// inf: sup of phi(x)|x| over the support.
MeasureValue generalized_deviation(const Density& f, const WeightFunction& phi, double alpha,
                                   const MeasureOptions& opt = {});
// J_{alpha,p} with (J)^{beta p} = int |f^{p-2} f'|^beta f; alpha in (1, inf).
// part "raw" holds the integral.
MeasureValue fisher_information(const Density& f, double alpha, double p, const MeasureOptions& opt = {});
// alpha in (1, inf): int phi |f^{p-2} f'|^beta f;
// alpha = 1: sup of phi |f^{p-2} f'| (the beta-th root object);
// alpha = inf: V(phi f^p / p) - int phi' f^p / p.
MeasureValue weighted_fisher_information(const Density& f, const WeightFunction& phi, double alpha, double p,
                                         const MeasureOptions& opt = {});

// Smallest value of phi over 1001 points of the support of f.
double weight_min_on_support(const Density& f, const WeightFunction& phi);

// Hints of f and phi merged.
std::vector<double> joint_hints(const Density& f, const WeightFunction& phi);

}  // namespace wrenyi
