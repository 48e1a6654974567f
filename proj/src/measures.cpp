#include "wrenyi/measures.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include "wrenyi/calculus.hpp"
#include "wrenyi/errors.hpp"
#include "wrenyi/special.hpp"

namespace wrenyi {

OrderParams OrderParams::make(double p, double alpha) {
  if (!(p > 0) || !std::isfinite(p)) throw InputError("order p must be a positive finite number");
  if (std::isnan(alpha) || alpha < 0) throw InputError("order alpha must lie in [0, inf]");
  return {p, alpha, holder_conjugate(alpha)};
}

double MeasureValue::part(std::string_view name) const {
  for (const auto& [k, v] : parts)
    if (k == name) return v;
  throw InputError("measure has no part " + std::string(name));
}

double MeasureValue::rel_error() const {
  if (value == 0.0) return error;
  return error / std::abs(value);
}

std::vector<double> joint_hints(const Density& f, const WeightFunction& phi) {
  std::vector<double> h = f.hints();
  h.insert(h.end(), phi.hints().begin(), phi.hints().end());
  return h;
}

double weight_min_on_support(const Density& f, const WeightFunction& phi) {
  const auto s = f.support();
  double lo = s.lo, hi = s.hi;
  if (!std::isfinite(lo)) lo = std::isfinite(hi) ? hi - 50.0 : -50.0;
  if (!std::isfinite(hi)) hi = lo + 100.0;
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1000; ++i) {
    const double x = lo + (hi - lo) * i / 1000.0;
    const double v = phi(x);
    if (std::isfinite(v)) m = std::min(m, v);
  }
  return m;
}

namespace {

struct ExpForm {
  double lambda, scale, gamma;
};

std::optional<ExpForm> exp_form(const Density& f, const WeightFunction& phi, const MeasureOptions& opt) {
  if (!opt.allow_closed_form || f.family() != DensityFamily::exponential) return std::nullopt;
  double s, g;
  if (!phi.exp_linear_form(&s, &g)) return std::nullopt;
  return ExpForm{f.param("lambda"), s, g};
}

std::optional<std::vector<double>> abspoly_coeffs(const Density& f, const WeightFunction& phi,
                                                  const MeasureOptions& opt) {
  if (!opt.allow_closed_form || f.family() != DensityFamily::exponential ||
      phi.family() != WeightFamily::abs_polynomial)
    return std::nullopt;
  std::vector<double> a;
  for (const auto& [k, v] : phi.params()) a.push_back(v);
  return a;
}

void add_warnings(MeasureValue& mv, const Density& f, const WeightFunction& phi) {
  mv.warnings.insert(mv.warnings.end(), f.warnings().begin(), f.warnings().end());
  mv.warnings.insert(mv.warnings.end(), phi.warnings().begin(), phi.warnings().end());
}

void require_flag(const Flag& fl) {
  if (!fl.satisfied()) throw DomainError("validity " + fl.name + " violated (margin " + format_real(fl.margin) + ")");
}

// Quadrature of fn over dom, with divergence turned into a DomainError.
num::IntegralResult checked_integral(const num::Integrand& fn, num::Interval dom, const std::vector<double>& hints,
                                     const MeasureOptions& opt, const std::string& what) {
  auto r = num::integrate(fn, dom, hints, opt.quad);
  if (r.status == num::QuadStatus::divergent) throw DomainError(what + ": integral diverges");
  return r;
}

MeasureValue from_integral(const num::IntegralResult& r, std::string branch) {
  MeasureValue mv;
  mv.value = r.value;
  mv.error = r.error;
  mv.status = r.status;
  mv.method = "quadrature";
  mv.branch = std::move(branch);
  if (r.status == num::QuadStatus::tolerance_not_met) mv.warnings.push_back("quadrature tolerance not met");
  return mv;
}

void merge_status(MeasureValue& into, const MeasureValue& from) {
  if (from.status != num::QuadStatus::converged) into.status = from.status;
  into.warnings.insert(into.warnings.end(), from.warnings.begin(), from.warnings.end());
  into.flags.insert(into.flags.end(), from.flags.begin(), from.flags.end());
}

double fisher_kernel(double fx, double dfx, double beta, double p) {
  if (fx <= 0.0 || !std::isfinite(fx)) return 0.0;
  const double d = std::abs(dfx);
  if (d == 0.0) return 0.0;
  // Log space: |f'|^beta and f^{beta(p-2)+1} under- and overflow separately in the tails.
  return std::exp(beta * std::log(d) + (beta * (p - 2.0) + 1.0) * std::log(fx));
}

}  // namespace

MeasureValue weighted_expectation(const Density& f, const WeightFunction& phi, const MeasureOptions& opt) {
  if (auto e = exp_form(f, phi, opt)) {
    MeasureValue mv;
    mv.branch = "expectation";
    mv.method = "closed-form";
    mv.flags.push_back({"lambda-gamma>0", e->lambda - e->gamma, true});
    require_flag(mv.flags.back());
    mv.value = e->scale * e->lambda / (e->lambda - e->gamma);
    add_warnings(mv, f, phi);
    return mv;
  }
  if (auto a = abspoly_coeffs(f, phi, opt)) {
    MeasureValue mv;
    mv.branch = "expectation";
    mv.method = "closed-form";
    const double lam = f.param("lambda");
    for (size_t i = 0; i < a->size(); ++i) mv.value += (*a)[i] * num::gamma_fn(i + 1.0) / std::pow(lam, double(i));
    add_warnings(mv, f, phi);
    return mv;
  }
  auto r = checked_integral(
      [&](double x) {
        const double fx = f.pdf(x);
        return fx == 0.0 ? 0.0 : phi(x) * fx;
      },
      f.support(), joint_hints(f, phi), opt, "E_f[phi]");
  auto mv = from_integral(r, "expectation");
  add_warnings(mv, f, phi);
  return mv;
}

MeasureValue weighted_power_integral(const Density& f, const WeightFunction& phi, double p,
                                     const MeasureOptions& opt) {
  if (!(p > 0)) throw InputError("order p must be positive");
  if (auto e = exp_form(f, phi, opt)) {
    MeasureValue mv;
    mv.branch = "power-integral";
    mv.method = "closed-form";
    mv.flags.push_back({"p*lambda-gamma>0", p * e->lambda - e->gamma, true});
    require_flag(mv.flags.back());
    mv.value = e->scale * std::pow(e->lambda, p) / (p * e->lambda - e->gamma);
    add_warnings(mv, f, phi);
    return mv;
  }
  if (auto a = abspoly_coeffs(f, phi, opt)) {
    MeasureValue mv;
    mv.branch = "power-integral";
    mv.method = "closed-form";
    const double lam = f.param("lambda");
    for (size_t i = 0; i < a->size(); ++i)
      mv.value += (*a)[i] * std::pow(lam, p) * num::gamma_fn(i + 1.0) / std::pow(p * lam, i + 1.0);
    add_warnings(mv, f, phi);
    return mv;
  }
  auto r = checked_integral(
      [&](double x) {
        const double fx = f.pdf(x);
        return fx == 0.0 ? 0.0 : phi(x) * std::pow(fx, p);
      },
      f.support(), joint_hints(f, phi), opt, "int phi f^p");
  auto mv = from_integral(r, "power-integral");
  add_warnings(mv, f, phi);
  return mv;
}

MeasureValue weighted_entropy(const Density& f, const WeightFunction& phi, const MeasureOptions& opt) {
  if (auto e = exp_form(f, phi, opt)) {
    MeasureValue mv;
    mv.branch = "weighted-entropy";
    mv.method = "closed-form";
    mv.flags.push_back({"lambda-gamma>0", e->lambda - e->gamma, true});
    require_flag(mv.flags.back());
    const double l = e->lambda, d = e->lambda - e->gamma;
    mv.value = e->scale * (l * l / (d * d) - l * std::log(l) / d);
    add_warnings(mv, f, phi);
    return mv;
  }
  auto r = checked_integral(
      [&](double x) {
        const double fx = f.pdf(x);
        if (fx <= 0.0) return 0.0;
        return -phi(x) * fx * std::log(fx);
      },
      f.support(), joint_hints(f, phi), opt, "weighted entropy");
  auto mv = from_integral(r, "weighted-entropy");
  add_warnings(mv, f, phi);
  return mv;
}

MeasureValue relative_weighted_entropy(const Density& f, const Density& g, const WeightFunction& phi,
                                       const MeasureOptions& opt) {
  auto ef = exp_form(f, phi, opt);
  if (ef && g.family() == DensityFamily::exponential) {
    MeasureValue mv;
    mv.branch = "relative-weighted-entropy";
    mv.method = "closed-form";
    mv.flags.push_back({"lambda1-gamma>0", ef->lambda - ef->gamma, true});
    require_flag(mv.flags.back());
    const double l1 = ef->lambda, l2 = g.param("lambda"), d = l1 - ef->gamma;
    mv.value = ef->scale * (l1 / d * std::log(l1 / l2) - (l1 - l2) * l1 / (d * d));
    add_warnings(mv, f, phi);
    return mv;
  }
  auto hints = joint_hints(f, phi);
  hints.insert(hints.end(), g.hints().begin(), g.hints().end());
  auto r = checked_integral(
      [&](double x) {
        const double fx = f.pdf(x);
        if (fx <= 0.0) return 0.0;
        const double gx = g.pdf(x);
        if (gx <= 0.0) return std::numeric_limits<double>::infinity();
        return phi(x) * fx * (std::log(fx) - std::log(gx));
      },
      f.support(), hints, opt, "relative weighted entropy (f > 0 where g = 0?)");
  auto mv = from_integral(r, "relative-weighted-entropy");
  add_warnings(mv, f, phi);
  return mv;
}

MeasureValue weighted_renyi_entropy(const Density& f, const WeightFunction& phi, double p,
                                    const MeasureOptions& opt) {
  if (p == 1.0) throw InputError("weighted Renyi entropy is undefined at p = 1; use the power (p = 1 branch)");
  auto I = weighted_power_integral(f, phi, p, opt);
  if (!(I.value > 0)) throw DomainError("int phi f^p is not positive; log undefined");
  MeasureValue mv = I;
  mv.branch = p < 1 ? "p<1" : "p>1";
  mv.value = std::log(I.value) / (1.0 - p);
  mv.error = I.rel_error() / std::abs(1.0 - p);
  mv.parts = {{"int_phi_fp", I.value}};
  return mv;
}

MeasureValue weighted_renyi_power(const Density& f, const WeightFunction& phi, double p, const MeasureOptions& opt) {
  if (p != 1.0) {
    auto h = weighted_renyi_entropy(f, phi, p, opt);
    MeasureValue mv = h;
    mv.value = std::exp(h.value);
    mv.error = mv.value * h.error;
    mv.parts.push_back({"entropy", h.value});
    return mv;
  }
  auto h = weighted_entropy(f, phi, opt);
  auto e = weighted_expectation(f, phi, opt);
  if (!(e.value > 0)) throw DomainError("p = 1 power needs E_f[phi] > 0");
  MeasureValue mv = h;
  merge_status(mv, e);
  mv.branch = "p=1";
  mv.value = std::exp(h.value / e.value);
  mv.error = mv.value * (h.error / e.value + std::abs(h.value) * e.error / (e.value * e.value));
  mv.parts = {{"weighted_entropy", h.value}, {"expectation", e.value}};
  return mv;
}

MeasureValue relative_renyi_entropy(const Density& f, const Density& g, const WeightFunction& phi, double p,
                                    const MeasureOptions& opt) {
  if (!(p > 0)) throw InputError("order p must be positive");
  if (p == 1.0) {
    auto rel = relative_weighted_entropy(f, g, phi, opt);
    auto ef = weighted_expectation(f, phi, opt);
    auto eg = weighted_expectation(g, phi, opt);
    if (!(ef.value > 0)) throw DomainError("p = 1 relative entropy needs E_f[phi] > 0");
    // the expectations' own validity flags name their lambda; tell f and g apart
    auto relabel = [](MeasureValue m, const std::string& which) {
      for (auto& fl : m.flags)
        if (fl.name.rfind("lambda-", 0) == 0) fl.name = which + fl.name.substr(6);
      return m;
    };
    MeasureValue mv = rel;
    merge_status(mv, relabel(ef, "lambda1"));
    merge_status(mv, relabel(eg, "lambda2"));
    std::erase_if(mv.flags, [seen = std::set<std::string>()](const Flag& fl) mutable {
      return !seen.insert(fl.name).second;
    });
    mv.branch = "p=1";
    mv.value = rel.value / ef.value;
    mv.error = rel.error / ef.value + std::abs(rel.value) * ef.error / (ef.value * ef.value);
    mv.flags.push_back({"E_f[phi]-E_g[phi]>=0", ef.value - eg.value, false});
    mv.parts = {{"relative_weighted_entropy", rel.value}, {"E_f_phi", ef.value}, {"E_g_phi", eg.value}};
    return mv;
  }

  MeasureValue mv;
  mv.branch = p < 1 ? "p<1" : "p>1";
  double i1, i2, i3, e1 = 0, e2 = 0, e3 = 0;
  auto ef = exp_form(f, phi, opt);
  if (ef && g.family() == DensityFamily::exponential) {
    const double l1 = ef->lambda, l2 = g.param("lambda"), gam = ef->gamma, s = ef->scale;
    mv.method = "closed-form";
    mv.flags.push_back({"lambda2(p-1)+lambda1-gamma>0", l2 * (p - 1.0) + l1 - gam, true});
    mv.flags.push_back({"lambda1*p-gamma>0", l1 * p - gam, true});
    mv.flags.push_back({"lambda2*p-gamma>0", l2 * p - gam, true});
    for (const auto& fl : mv.flags) require_flag(fl);
    i1 = s * l1 * std::pow(l2, p - 1.0) / (l2 * (p - 1.0) + l1 - gam);
    i2 = s * std::pow(l2, p) / (l2 * p - gam);
    i3 = s * std::pow(l1, p) / (l1 * p - gam);
  } else {
    auto hints = joint_hints(f, phi);
    hints.insert(hints.end(), g.hints().begin(), g.hints().end());
    auto r1 = checked_integral(
        [&](double x) {
          const double fx = f.pdf(x);
          if (fx <= 0.0) return 0.0;
          const double gx = g.pdf(x);
          if (gx <= 0.0 && p < 1.0) return std::numeric_limits<double>::infinity();
          return phi(x) * std::pow(gx, p - 1.0) * fx;
        },
        f.support(), hints, opt, "int phi g^{p-1} f");
    auto I2 = weighted_power_integral(g, phi, p, opt);
    auto I3 = weighted_power_integral(f, phi, p, opt);
    i1 = r1.value;
    e1 = r1.error;
    i2 = I2.value;
    e2 = I2.error;
    i3 = I3.value;
    e3 = I3.error;
    mv.method = "quadrature";
    if (r1.status != num::QuadStatus::converged || I2.status != num::QuadStatus::converged ||
        I3.status != num::QuadStatus::converged) {
      mv.status = num::QuadStatus::tolerance_not_met;
      mv.warnings.push_back("quadrature tolerance not met");
    }
  }
  if (!(i1 > 0) || !(i2 > 0) || !(i3 > 0)) throw DomainError("relative Renyi entropy: a defining integral is not positive");
  const double c1 = 1.0 / (1.0 - p), c2 = 1.0 / p, c3 = 1.0 / (p * (1.0 - p));
  mv.value = c1 * std::log(i1) + c2 * std::log(i2) - c3 * std::log(i3);
  mv.error = std::abs(c1) * e1 / i1 + std::abs(c2) * e2 / i2 + std::abs(c3) * e3 / i3;
  mv.parts = {{"int_phi_gp1_f", i1}, {"int_phi_gp", i2}, {"int_phi_fp", i3}};
  add_warnings(mv, f, phi);
  return mv;
}

MeasureValue relative_renyi_power(const Density& f, const Density& g, const WeightFunction& phi, double p,
                                  const MeasureOptions& opt) {
  auto d = relative_renyi_entropy(f, g, phi, p, opt);
  MeasureValue mv = d;
  mv.value = std::exp(d.value);
  mv.error = mv.value * d.error;
  mv.parts.push_back({"relative_entropy", d.value});
  return mv;
}

MeasureValue generalized_moment(const Density& f, const WeightFunction& phi, double alpha, const MeasureOptions& opt) {
  if (!(alpha > 0) || !std::isfinite(alpha)) throw InputError("generalized moment needs alpha in (0, inf)");
  if (auto e = exp_form(f, phi, opt)) {
    MeasureValue mv;
    mv.branch = "moment";
    mv.method = "closed-form";
    mv.flags.push_back({"lambda-gamma>0", e->lambda - e->gamma, true});
    require_flag(mv.flags.back());
    mv.value = e->scale * e->lambda * num::gamma_fn(alpha + 1.0) / std::pow(e->lambda - e->gamma, alpha + 1.0);
    add_warnings(mv, f, phi);
    return mv;
  }
  if (auto a = abspoly_coeffs(f, phi, opt)) {
    MeasureValue mv;
    mv.branch = "moment";
    mv.method = "closed-form";
    const double lam = f.param("lambda");
    for (size_t i = 0; i < a->size(); ++i)
      mv.value += (*a)[i] * num::gamma_fn(alpha + i + 1.0) / std::pow(lam, alpha + i);
    add_warnings(mv, f, phi);
    return mv;
  }
  auto r = checked_integral(
      [&](double x) {
        const double fx = f.pdf(x);
        return fx == 0.0 ? 0.0 : phi(x) * std::pow(std::abs(x), alpha) * fx;
      },
      f.support(), joint_hints(f, phi), opt, "generalized moment");
  auto mv = from_integral(r, "moment");
  add_warnings(mv, f, phi);
  return mv;
}

MeasureValue generalized_deviation(const Density& f, const WeightFunction& phi, double alpha,
                                   const MeasureOptions& opt) {
  if (std::isnan(alpha) || alpha < 0) throw InputError("deviation order alpha must lie in [0, inf]");
  if (alpha == 0.0) {
    auto e = weighted_expectation(f, phi, opt);
    if (!(e.value > 0)) throw DomainError("alpha = 0 deviation needs E_f[phi] > 0");
    std::vector<double> hints = joint_hints(f, phi);
    hints.push_back(0.0);
    auto r = checked_integral(
        [&](double x) {
          const double fx = f.pdf(x);
          if (fx == 0.0 || x == 0.0) return 0.0;
          return phi(x) * fx * std::log(std::abs(x));
        },
        f.support(), hints, opt, "log-moment");
    MeasureValue mv = from_integral(r, "alpha=0");
    merge_status(mv, e);
    mv.value = std::exp(r.value / e.value);
    mv.error = mv.value * (r.error / e.value + std::abs(r.value) * e.error / (e.value * e.value));
    mv.parts = {{"log_moment", r.value}, {"expectation", e.value}};
    add_warnings(mv, f, phi);
    return mv;
  }
  if (std::isinf(alpha)) {
    auto fn = [&](double x) {
      if (!(f.pdf(x) > 0)) return -std::numeric_limits<double>::infinity();
      return phi(x) * std::abs(x);
    };
    MeasureValue mv;
    mv.branch = "alpha=inf";
    mv.method = "esssup";
    mv.value = num::essential_supremum(fn, f.support(), joint_hints(f, phi));
    mv.error = 1e-10 * std::max(1.0, std::abs(mv.value));
    add_warnings(mv, f, phi);
    return mv;
  }
  auto mu = generalized_moment(f, phi, alpha, opt);
  if (!(mu.value > 0)) throw DomainError("generalized moment is not positive; deviation undefined");
  MeasureValue mv = mu;
  mv.branch = "alpha-finite";
  mv.value = std::pow(mu.value, 1.0 / alpha);
  mv.error = mv.value * mu.rel_error() / alpha;
  mv.parts = {{"moment", mu.value}};
  if (weight_min_on_support(f, phi) < 0) mv.warnings.push_back("phi takes negative values on the support");
  return mv;
}

MeasureValue fisher_information(const Density& f, double alpha, double p, const MeasureOptions& opt) {
  if (!(alpha > 1) || !std::isfinite(alpha)) throw InputError("Fisher information needs alpha in (1, inf)");
  if (!(p > 0)) throw InputError("order p must be positive");
  const double beta = holder_conjugate(alpha);
  auto r = checked_integral([&](double x) { return fisher_kernel(f.pdf(x), f.derivative(x), beta, p); }, f.support(),
                            f.hints(), opt, "Fisher information");
  MeasureValue mv = from_integral(r, "alpha-finite");
  mv.value = std::pow(r.value, 1.0 / (beta * p));
  mv.error = r.value > 0 ? mv.value * r.error / (r.value * beta * p) : r.error;
  mv.parts = {{"raw", r.value}, {"raw_error", r.error}};
  mv.warnings.insert(mv.warnings.end(), f.warnings().begin(), f.warnings().end());
  return mv;
}

MeasureValue weighted_fisher_information(const Density& f, const WeightFunction& phi, double alpha, double p,
                                         const MeasureOptions& opt) {
  if (!(p > 0)) throw InputError("order p must be positive");
  if (std::isnan(alpha) || alpha < 1) throw InputError("weighted Fisher information needs alpha in [1, inf]");
  const auto hints = joint_hints(f, phi);
  if (alpha == 1.0) {
    auto fn = [&](double x) {
      const double fx = f.pdf(x);
      if (!(fx > 0)) return -std::numeric_limits<double>::infinity();
      return phi(x) * std::abs(std::pow(fx, p - 2.0) * f.derivative(x));
    };
    MeasureValue mv;
    mv.branch = "alpha=1";
    mv.method = "esssup";
    mv.value = num::essential_supremum(fn, f.support(), hints);
    mv.error = 1e-10 * std::max(1.0, std::abs(mv.value));
    add_warnings(mv, f, phi);
    return mv;
  }
  if (std::isinf(alpha)) {
    auto tv_fn = [&](double x) {
      const double fx = f.pdf(x);
      return fx == 0.0 ? 0.0 : phi(x) * std::pow(fx, p) / p;
    };
    const double tv = num::total_variation(tv_fn, f.support(), hints);
    auto r = checked_integral(
        [&](double x) {
          const double fx = f.pdf(x);
          return fx == 0.0 ? 0.0 : phi.derivative(x) * std::pow(fx, p) / p;
        },
        f.support(), hints, opt, "int phi' f^p / p");
    MeasureValue mv = from_integral(r, "alpha=inf");
    mv.method = "total-variation";
    mv.value = tv - r.value;
    mv.error = r.error + 1e-9 * std::abs(tv);
    mv.parts = {{"total_variation", tv}, {"int_dphi_fp_over_p", r.value}};
    add_warnings(mv, f, phi);
    return mv;
  }
  const double beta = holder_conjugate(alpha);
  auto r = checked_integral(
      [&](double x) {
        const double k = fisher_kernel(f.pdf(x), f.derivative(x), beta, p);
        return k == 0.0 ? 0.0 : phi(x) * k;
      },
      f.support(), hints, opt, "weighted Fisher information");
  MeasureValue mv = from_integral(r, "alpha-finite");
  add_warnings(mv, f, phi);
  return mv;
}

}  // namespace wrenyi
