#include "wrenyi/gaussian_forms.hpp"

#include <cmath>
#include <limits>

#include "wrenyi/calculus.hpp"
#include "wrenyi/density.hpp"
#include "wrenyi/errors.hpp"
#include "wrenyi/special.hpp"

namespace wrenyi {

std::string to_string(GaussianCase c) {
  switch (c) {
    case GaussianCase::p_above_one: return "p>1";
    case GaussianCase::p_below_one: return "p<1";
    case GaussianCase::p_one: return "p=1";
    case GaussianCase::alpha_zero: return "alpha=0";
    case GaussianCase::alpha_infinite: return "alpha=inf";
  }
  return "?";
}

GaussianCase classify_gaussian(double alpha, double p) {
  if (std::isnan(alpha) || alpha < 0) throw InputError("alpha must lie in [0, inf]");
  if (!(p > 0) || !std::isfinite(p)) throw InputError("p must be a positive finite number");
  if (std::isinf(alpha)) return GaussianCase::alpha_infinite;
  if (alpha == 0.0) {
    if (!(p > 1)) throw InputError("alpha = 0 needs p > 1");
    return GaussianCase::alpha_zero;
  }
  if (p == 1.0) return GaussianCase::p_one;
  if (p > 1.0) return GaussianCase::p_above_one;
  if (!(p > 1.0 / (1.0 + alpha)))
    throw InputError("p < 1 needs p > 1/(1+alpha) (got p=" + format_real(p) + ", alpha=" + format_real(alpha) + ")");
  return GaussianCase::p_below_one;
}

AuxiliaryLaw AuxiliaryLaw::beta(double a, double b) {
  if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b))
    throw InputError("Beta law needs finite positive shapes");
  return {Kind::beta, a, b};
}

AuxiliaryLaw AuxiliaryLaw::gamma(double k) {
  if (!(k > 0) || !std::isfinite(k)) throw InputError("Gamma law needs a finite positive shape");
  return {Kind::gamma, k, 1.0};
}

double AuxiliaryLaw::pdf(double z) const {
  return kind == Kind::beta ? num::beta_pdf(shape1, shape2, z) : num::gamma_pdf(shape1, z);
}

double AuxiliaryLaw::mean() const { return kind == Kind::beta ? shape1 / (shape1 + shape2) : shape1; }

double AuxiliaryLaw::quantile(double u) const {
  return kind == Kind::beta ? num::ibeta_inv(shape1, shape2, u) : num::gamma_p_inv(shape1, u);
}

std::string AuxiliaryLaw::describe() const {
  if (kind == Kind::beta) return "Beta(" + format_real(shape1) + "," + format_real(shape2) + ")";
  return "Gamma(" + format_real(shape1) + ",1)";
}

namespace {

// An endpoint singularity at w = 0 is integrable only if w*v(w) still
// shrinks there; sample far inside the last quadrature node.
template <class F>
void check_endpoint(const F& fn) {
  const double w1 = 1e-100, w2 = 1e-200;
  const double r1 = std::abs(w1 * fn(w1)), r2 = std::abs(w2 * fn(w2));
  if (!std::isfinite(r1) || !std::isfinite(r2) || (r2 >= 0.5 * r1 && r2 > 1e-30))
    throw DomainError("auxiliary expectation diverges at an endpoint");
}

}  // namespace

double expect(const AuxiliaryLaw& law, const std::function<double(double, double)>& h,
              const num::QuadratureConfig& cfg) {
  double total = 0.0;
  if (law.kind == AuxiliaryLaw::Kind::beta) {
    const double a = law.shape1, b = law.shape2;
    const double lb = num::log_beta(a, b);
    // z = w^{1/a} on [0, 1/2] and 1 - z = v^{1/b} on [1/2, 1] absorb the
    // endpoint powers of the density.
    auto left = [&](double w) {
      if (w <= 0.0) return 0.0;
      const double z = std::pow(w, 1.0 / a);
      const double v = h(z, 1.0 - z);
      if (v == 0.0) return 0.0;
      return v * std::exp((b - 1.0) * std::log1p(-z) - lb) / a;
    };
    auto right = [&](double w) {
      if (w <= 0.0) return 0.0;
      const double omz = std::pow(w, 1.0 / b);
      const double v = h(1.0 - omz, omz);
      if (v == 0.0) return 0.0;
      return v * std::exp((a - 1.0) * std::log1p(-omz) - lb) / b;
    };
    check_endpoint(left);
    check_endpoint(right);
    total += num::integrate_value(left, {0.0, std::pow(0.5, a)}, {}, cfg);
    total += num::integrate_value(right, {0.0, std::pow(0.5, b)}, {}, cfg);
  } else {
    const double k = law.shape1;
    const double lg = std::lgamma(k);
    auto head = [&](double w) {
      if (w <= 0.0) return 0.0;
      const double z = std::pow(w, 1.0 / k);
      const double v = h(z, 1.0 - z);
      if (v == 0.0) return 0.0;
      return v * std::exp(-z - lg) / k;
    };
    auto tail = [&](double z) {
      const double d = num::gamma_pdf(k, z);
      if (d == 0.0) return 0.0;
      const double v = h(z, 1.0 - z);
      if (v == 0.0) return 0.0;
      return v * d;
    };
    check_endpoint(head);
    total += num::integrate_value(head, {0.0, 1.0}, {}, cfg);
    const double mode = std::max(1.0, k - 1.0);
    const double hint[] = {mode};
    total += num::integrate_value(tail, {1.0, num::kInf}, hint, cfg);
  }
  return total;
}

namespace {

double symmetric(const WeightFunction& phi, double r) { return phi(-r) + phi(r); }

num::QuadratureConfig aux_config() {
  num::QuadratureConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-11;
  return cfg;
}

}  // namespace

double lambda_tilde(const WeightFunction& phi, double p, double alpha, const AuxiliaryLaw& law) {
  if (p == 1.0) throw InputError("lambda_tilde needs p != 1");
  bool negative = false;
  double v = expect(
      law,
      [&](double, double omz) {
        const double q = omz / (p - 1.0);
        if (q < 0) negative = true;
        return symmetric(phi, std::pow(std::abs(q), 1.0 / alpha));
      },
      aux_config());
  if (negative) throw DomainError("lambda_tilde: (1-Z)/(p-1) negative on the law's support");
  return v;
}

double lambda_bar(const WeightFunction& phi, double p, double alpha, const AuxiliaryLaw& law) {
  if (p == 1.0) throw InputError("lambda_bar needs p != 1");
  bool negative = false;
  double v = expect(
      law,
      [&](double z, double omz) {
        const double q = omz / (z * (1.0 - p));
        if (q < 0) negative = true;
        return symmetric(phi, std::pow(std::abs(q), 1.0 / alpha));
      },
      aux_config());
  if (negative) throw DomainError("lambda_bar: (1-Z)/(Z(1-p)) negative on the law's support");
  return v;
}

double theta(const WeightFunction& phi, double alpha, const AuxiliaryLaw& law) {
  return expect(law, [&](double z, double) { return symmetric(phi, std::pow(z, 1.0 / alpha)); }, aux_config());
}

double upsilon(const WeightFunction& phi, const AuxiliaryLaw& law) {
  return expect(law, [&](double z, double) { return symmetric(phi, std::exp(-z)); }, aux_config());
}

GaussianLaws gaussian_laws(double alpha, double p) {
  switch (classify_gaussian(alpha, p)) {
    case GaussianCase::p_above_one: {
      const double q = p / (p - 1.0);
      return {AuxiliaryLaw::beta((2.0 * p - 1.0) / (p - 1.0), 1.0 / alpha),
              AuxiliaryLaw::beta(q, (alpha + 1.0) / alpha), AuxiliaryLaw::beta(q, 1.0 / alpha)};
    }
    case GaussianCase::p_below_one: {
      const double c = (p * (alpha + 1.0) - 1.0) / (alpha * (1.0 - p));
      return {AuxiliaryLaw::beta(c, 1.0 / alpha), AuxiliaryLaw::beta(c, (alpha + 1.0) / alpha),
              AuxiliaryLaw::beta(1.0 / (1.0 - p) - 1.0 / alpha, 1.0 / alpha)};
    }
    case GaussianCase::p_one:
      return {AuxiliaryLaw::gamma(1.0 / alpha), AuxiliaryLaw::gamma((alpha + 1.0) / alpha),
              AuxiliaryLaw::gamma(1.0 / alpha)};
    case GaussianCase::alpha_zero:
      return {AuxiliaryLaw::gamma((2.0 * p - 1.0) / (p - 1.0)), AuxiliaryLaw::gamma(p / (p - 1.0)),
              AuxiliaryLaw::gamma(1.0 / (p - 1.0))};
    case GaussianCase::alpha_infinite:
      break;
  }
  throw InputError("alpha = inf has no auxiliary laws");
}

double GaussianMeasureSet::part(const std::string& name) const {
  for (const auto& [k, v] : parts)
    if (k == name) return v;
  throw InputError("gaussian measure set has no part " + name);
}

GaussianMeasureSet gaussian_measures(const WeightFunction& phi, double alpha, double p) {
  GaussianMeasureSet s;
  s.tag = classify_gaussian(alpha, p);
  const double beta = holder_conjugate(alpha);
  const bool fisher_ok = alpha > 1.0 && std::isfinite(alpha);

  switch (s.tag) {
    case GaussianCase::p_above_one:
    case GaussianCase::p_below_one: {
      const double a = generalized_gaussian_constant(alpha, p);
      const auto laws = gaussian_laws(alpha, p);
      const bool above = s.tag == GaussianCase::p_above_one;
      auto lam = [&](const AuxiliaryLaw& law) {
        return above ? lambda_tilde(phi, p, alpha, law) : lambda_bar(phi, p, alpha, law);
      };
      const double lz = lam(laws.entropy_law);
      const double ly = lam(laws.deviation_law);
      const double le = lam(laws.extra_law);
      const double k = p * alpha + p - 1.0;
      s.power = std::pow(2.0, 1.0 / (p - 1.0)) / a * std::pow(p * alpha / k * lz, 1.0 / (1.0 - p));
      s.deviation = std::pow(ly / (2.0 * k), 1.0 / alpha);
      s.expectation = 0.5 * le;
      if (fisher_ok) {
        s.fisher = ly / (2.0 * k) * std::pow(a, beta * (p - 1.0)) * std::pow(alpha, beta);
        s.has_fisher = true;
      }
      s.parts = {{"lambda_entropy", lz}, {"lambda_deviation", ly}, {"lambda_expectation", le}, {"a", a}};
      s.notes.push_back("entropy law " + laws.entropy_law.describe() + ", deviation law " +
                        laws.deviation_law.describe());
      break;
    }
    case GaussianCase::p_one: {
      const double a = generalized_gaussian_constant(alpha, 1.0);
      const auto laws = gaussian_laws(alpha, p);
      const double tw = theta(phi, alpha, laws.deviation_law);
      const double twb = theta(phi, alpha, laws.entropy_law);
      s.power = std::exp(tw / (alpha * twb)) / a;
      s.deviation = std::pow(tw / (2.0 * alpha), 1.0 / alpha);
      s.expectation = 0.5 * twb;
      if (fisher_ok) {
        s.fisher = 0.5 * std::pow(alpha, beta - 1.0) * tw;
        s.has_fisher = true;
      }
      s.parts = {{"theta_W", tw}, {"theta_Wbar", twb}, {"a", a},
                 {"weighted_entropy", s.expectation * std::log(1.0 / a) + tw / (2.0 * alpha)}};
      break;
    }
    case GaussianCase::alpha_zero: {
      const double a = generalized_gaussian_constant(0.0, p);
      const auto laws = gaussian_laws(alpha, p);
      const double ux = upsilon(phi, laws.entropy_law);
      const double uxt = upsilon(phi, laws.deviation_law);
      const double uxb = upsilon(phi, laws.extra_law);
      s.power = std::pow(p / (2.0 * (p - 1.0)) * ux, 1.0 / (1.0 - p)) / a;
      s.deviation = std::exp(-(p / (p - 1.0)) * ux / uxt);
      s.expectation = 0.5 * uxt;
      s.parts = {{"upsilon_X", ux},
                 {"upsilon_Xtilde", uxt},
                 {"upsilon_Xbar", uxb},
                 {"a", a},
                 {"deviation_as_displayed", std::exp(-(p - 1.0) * uxb / uxt)}};
      s.notes.push_back("deviation uses exp(-(p/(p-1)) Y(X)/Y(X~)); the displayed Y(X-bar) form is kept as a diagnostic");
      break;
    }
    case GaussianCase::alpha_infinite: {
      const auto anti = antiderivatives(phi);
      const double dpsi = anti.psi(1.0) - anti.psi(-1.0);
      const double dpsib = anti.psi_bar(1.0) - anti.psi_bar(-1.0);
      if (!(dpsi > 0)) throw DomainError("psi(1) - psi(-1) must be positive");
      s.expectation = 0.5 * dpsi;
      s.power = p == 1.0 ? 2.0 : std::pow(2.0, p / (p - 1.0)) * std::pow(dpsi, 1.0 / (1.0 - p));
      const double hints[] = {0.0};
      s.deviation = num::essential_supremum([&](double x) { return phi(x) * std::abs(x); }, {-1.0, 1.0}, hints);
      s.fisher = dpsi / (p * std::pow(2.0, p)) - std::pow(2.0, -1.0 - p) * dpsib;
      s.has_fisher = true;
      const double abs_dphi = num::integrate_value([&](double x) { return std::abs(phi.derivative(x)); },
                                                   {-1.0, 1.0}, phi.hints());
      const double direct = std::pow(2.0, -p) / p * (phi(-1.0) + phi(1.0) + abs_dphi - dpsib);
      const double sup_phi = num::essential_supremum([&](double x) { return phi(x); }, {-1.0, 1.0}, hints);
      s.parts = {{"psi_difference", dpsi},
                 {"psi_bar_difference", dpsib},
                 {"fisher_from_total_variation", direct},
                 {"esssup_phi", sup_phi}};
      if (std::abs(direct - s.fisher) > 1e-9 * (1.0 + std::abs(direct)))
        s.notes.push_back("displayed Fisher form differs from the total-variation definition for this weight");
      if (std::abs(sup_phi - s.deviation) > 1e-9 * (1.0 + sup_phi))
        s.notes.push_back("sup phi(x)|x| differs from sup phi on [-1,1]");
      break;
    }
  }
  return s;
}

std::string to_string(GaussianIdentity id) {
  switch (id) {
    case GaussianIdentity::p_above_one: return "gauss-identity-p-gt-1";
    case GaussianIdentity::p_below_one: return "gauss-identity-p-lt-1";
    case GaussianIdentity::p_one: return "gauss-identity-p-eq-1";
    case GaussianIdentity::uniform: return "gauss-identity-uniform";
  }
  return "?";
}

GaussianIdentity identity_for(GaussianCase c) {
  switch (c) {
    case GaussianCase::p_above_one: return GaussianIdentity::p_above_one;
    case GaussianCase::p_below_one: return GaussianIdentity::p_below_one;
    case GaussianCase::p_one: return GaussianIdentity::p_one;
    case GaussianCase::alpha_infinite: return GaussianIdentity::uniform;
    case GaussianCase::alpha_zero: break;
  }
  throw InputError("no power/deviation/Fisher identity for alpha = 0");
}

IdentityResidual verify_identity(GaussianIdentity id, const WeightFunction& phi, double alpha, double p,
                                 const MeasureOptions& opt) {
  const GaussianCase c = classify_gaussian(alpha, p);
  if (identity_for(c) != id)
    throw InputError(to_string(id) + " does not apply at alpha=" + format_real(alpha) + ", p=" + format_real(p));
  const auto set = gaussian_measures(phi, alpha, p);
  const Density g = make_generalized_gaussian(alpha, p);
  IdentityResidual r;
  r.id = id;
  const double beta = holder_conjugate(alpha);
  switch (id) {
    case GaussianIdentity::p_above_one:
    case GaussianIdentity::p_below_one: {
      if (!set.has_fisher) throw InputError("the identity needs alpha in (1, inf)");
      const double n = weighted_renyi_power(g, phi, p, opt).value;
      r.lhs = std::pow(n, 1.0 - p);
      const double ratio = set.part("lambda_entropy") / set.part("lambda_deviation");
      r.rhs = p * set.deviation * std::pow(set.fisher, 1.0 / beta) * ratio;
      r.parts = {{"power_direct", n}, {"power_closed", set.power}, {"lambda_ratio", ratio}};
      break;
    }
    case GaussianIdentity::p_one: {
      // at alpha = 1 the Fisher factor enters with exponent 1/beta = 0
      if (!(alpha >= 1.0 && std::isfinite(alpha))) throw InputError("the identity needs alpha in [1, inf)");
      const double sigma = generalized_deviation(g, phi, alpha, opt).value;
      const double j = weighted_fisher_information(g, phi, alpha, 1.0, opt).value;
      r.lhs = 2.0 * sigma * std::pow(j, 1.0 / beta);
      r.rhs = set.part("theta_W");
      r.parts = {{"deviation_direct", sigma}, {"fisher_direct", j}};
      break;
    }
    case GaussianIdentity::uniform: {
      if (p == 1.0) throw InputError("the uniform identity needs p != 1");
      const double n = weighted_renyi_power(g, phi, p, opt).value;
      r.lhs = std::pow(n, 1.0 - p);
      const double dpsib = set.part("psi_bar_difference");
      r.rhs = p * set.fisher - p * std::pow(2.0, -1.0 - p) * dpsib;
      r.parts = {{"power_direct", n},
                 {"psi_bar_difference", dpsib},
                 {"rhs_with_opposite_sign", p * set.fisher + p * std::pow(2.0, -1.0 - p) * dpsib}};
      break;
    }
  }
  r.residual = std::abs(r.lhs - r.rhs) / (1.0 + std::abs(r.lhs));
  return r;
}

}  // namespace wrenyi
