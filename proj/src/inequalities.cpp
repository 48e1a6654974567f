#include "wrenyi/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wrenyi/calculus.hpp"
#include "wrenyi/errors.hpp"
#include "wrenyi/gaussian_forms.hpp"
#include "wrenyi/special.hpp"

namespace wrenyi {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::assumptions_unmet: return "assumptions-unmet";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

double InequalityVerdict::term(std::string_view name) const {
  for (const auto& [k, v] : terms)
    if (k == name) return v;
  throw InputError("verdict has no term " + std::string(name));
}

InequalityVerdict make_verdict(std::string id, double lhs, double rhs, double error, std::vector<Flag> margins,
                               double tol) {
  InequalityVerdict v;
  v.id = std::move(id);
  v.lhs = lhs;
  v.rhs = rhs;
  v.slack = rhs - lhs;
  v.error = error;
  v.tolerance = tol;
  v.margins = std::move(margins);
  if (!std::isfinite(v.slack)) throw DomainError(v.id + ": a side of the inequality is not finite");
  const double tol_abs = tol * (1.0 + std::abs(lhs) + std::abs(rhs));
  v.equality = std::abs(v.slack) <= tol_abs;
  const bool margins_ok =
      std::all_of(v.margins.begin(), v.margins.end(), [&](const Flag& f) { return f.satisfied(tol); });
  if (!margins_ok)
    v.verdict = Verdict::assumptions_unmet;
  else if (v.slack >= -tol_abs && (v.slack > error || v.equality))
    v.verdict = Verdict::holds;
  else if (std::abs(v.slack) <= error)
    v.verdict = Verdict::inconclusive;
  else
    v.verdict = Verdict::violated;
  return v;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Running sum of relative errors of the measures a verdict is built from.
struct ErrorSum {
  double rel = 0.0;
  double take(const MeasureValue& m) {
    if (std::isfinite(m.rel_error())) rel += m.rel_error();
    return m.value;
  }
};

void require_order(double alpha, double p) {
  if (std::isnan(alpha) || alpha < 0.0) throw InputError("alpha must be in [0, inf]");
  if (!(p > 0.0)) throw InputError("order p must be positive");
  if (!generalized_gaussian_valid(alpha, p))
    throw InputError("(alpha, p) = (" + format_real(alpha) + ", " + format_real(p) +
                     ") needs p > 1/(1+alpha) (and p > 1 at alpha = 0)");
}

double power(const Density& f, const WeightFunction& w, double p, const MeasureOptions& o, ErrorSum& e) {
  return e.take(weighted_renyi_power(f, w, p, o));
}

// Largest |f - g| on 801 points spanning both bulks.
double max_pdf_gap(const Density& f, const Density& g) {
  auto span = [](const Density& d) {
    const auto s = d.support();
    const double lo = std::isfinite(s.lo) ? s.lo : inverse_cdf(d, 1e-8, 1.0 - 1e-8);
    const double hi = std::isfinite(s.hi) ? s.hi : inverse_cdf(d, 1.0 - 1e-8, 1e-8);
    return std::pair{lo, hi};
  };
  const auto [a1, b1] = span(f);
  const auto [a2, b2] = span(g);
  const double lo = std::min(a1, a2), hi = std::max(b1, b2);
  double gap = 0.0;
  for (int i = 0; i <= 800; ++i) {
    const double x = lo + (hi - lo) * i / 800.0;
    gap = std::max(gap, std::abs(f.pdf(x) - g.pdf(x)));
  }
  return gap;
}

num::Interval open_support(const Density& f) { return f.support(); }

double integrate_on(const Density& f, const num::Integrand& fn, const MeasureOptions& o, const char* what,
                    ErrorSum& e) {
  auto r = num::integrate(fn, f.support(), f.hints(), o.quad);
  if (r.status == num::QuadStatus::divergent) throw DomainError(std::string(what) + ": integral diverges");
  if (r.value != 0.0) e.rel += r.error / std::abs(r.value);
  return r.value;
}

}  // namespace

// --- relative Renyi entropy ---

InequalityVerdict check_relative_renyi(const Density& f, const Density& g, const WeightFunction& phi, double p,
                                       const VerdictOptions& opt) {
  MeasureValue d;
  try {
    d = relative_renyi_entropy(f, g, phi, p, opt.measure);
  } catch (const DomainError& e) {
    // an infinite defining integral is a failed hypothesis, not a result
    auto v = make_verdict("relative-renyi-nonneg", 0.0, 0.0, 0.0, {Flag{"defining-integrals-finite", -1.0, true}},
                          opt.tol);
    v.notes.push_back(e.what());
    return v;
  }
  std::vector<Flag> margins;
  if (p == 1.0) margins = d.flags;
  auto v = make_verdict("relative-renyi-nonneg", 0.0, d.value, d.error, margins, opt.tol);
  v.terms = d.parts;
  v.terms.push_back({"D", d.value});
  v.notes.push_back("method " + d.method);
  return v;
}

// --- moment-entropy ---

MeiTerms mei_terms(const Density& f, const WeightFunction& phi, double alpha, double p, const MeasureOptions& o) {
  require_order(alpha, p);
  const Density g = make_generalized_gaussian(alpha, p);
  ErrorSum e;
  const double sf = e.take(generalized_deviation(f, phi, alpha, o));
  const double sg = e.take(generalized_deviation(g, phi, alpha, o));
  MeiTerms t{sf / sg, derive_phi_star(phi, sf, sg), 0.0, 0.0};
  t.lhs = power(f, phi, p, o, e) / sf;
  const double ng = power(g, phi, p, o, e);
  const double ngs = p == 1.0 ? 1.0 : power(g, t.phi_star, p, o, e);
  t.rhs = std::pow(ng, p) * std::pow(ngs, 1.0 - p) / sg;
  return t;
}

InequalityVerdict check_mei(const Density& f, const WeightFunction& phi, double alpha, double p,
                            const VerdictOptions& opt) {
  require_order(alpha, p);
  const auto& o = opt.measure;
  const Density g = make_generalized_gaussian(alpha, p);
  ErrorSum e;
  const double sf = e.take(generalized_deviation(f, phi, alpha, o));
  const double sg = e.take(generalized_deviation(g, phi, alpha, o));
  const auto phi_star = derive_phi_star(phi, sf, sg);
  const double nf = power(f, phi, p, o, e);
  const double ng = power(g, phi, p, o, e);
  const double ngs = p == 1.0 ? 1.0 : power(g, phi_star, p, o, e);
  const double lhs = nf / sf;
  const double rhs = std::pow(ng, p) * std::pow(ngs, 1.0 - p) / sg;

  const double ef = e.take(weighted_expectation(f, phi, o));
  const double eg = e.take(weighted_expectation(g, phi, o));
  std::vector<Flag> margins{{"E_f[phi]-E_G[phi]", ef - eg, false}};
  if (p == 1.0) {
    const double egs = e.take(weighted_expectation(g, phi_star, o));
    margins.push_back({"E_f[phi]-E_G[phi*]", ef - egs, false});
  }
  auto v = make_verdict("mei", lhs, rhs, e.rel * (std::abs(lhs) + std::abs(rhs)), margins, opt.tol);
  const double gap = max_pdf_gap(f, g);
  v.equality = v.equality && gap <= 1e-6;
  v.terms = {{"t_phi", sf / sg}, {"sigma_f", sf}, {"sigma_G", sg},        {"N_phi_f", nf},
             {"N_phi_G", ng},    {"N_phistar_G", ngs}, {"E_f_phi", ef}, {"E_G_phi", eg},
             {"max_pdf_gap_to_G", gap}};
  return v;
}

ScalingResidual check_scaling_identity(const WeightFunction& phi, double alpha, double p, double t,
                                       const MeasureOptions& o) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("scale t must be positive and finite");
  require_order(alpha, p);
  ScalingResidual r;
  r.lhs = weighted_power_integral(make_generalized_gaussian(alpha, p, t), phi, p, o).value;
  const auto scaled = compose_with_map(phi, linear_map(t));
  r.rhs = std::pow(t, 1.0 - p) * weighted_power_integral(make_generalized_gaussian(alpha, p), scaled, p, o).value;
  const double diff = std::abs(r.lhs - r.rhs);
  r.residual = r.lhs == 0.0 ? diff : diff / std::abs(r.lhs);
  return r;
}

// --- corollaries of the moment-entropy inequality ---

double cor1_constant(double c, double alpha) { return (c + 1.0) * (c + alpha) / alpha; }

std::vector<InequalityVerdict> check_cor1(const Density& f, double c, double alpha, double p,
                                          const VerdictOptions& opt) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("alpha must be in (0, inf)");
  require_order(alpha, p);
  if (!(c + alpha > 0.0)) throw InputError("c + alpha must be positive");
  if (!(c > -1.0)) throw InputError("c must exceed -1");
  const auto& o = opt.measure;
  const Density g = make_generalized_gaussian(alpha, p);
  const auto phi = make_power_weight(c);
  std::vector<InequalityVerdict> out;

  {
    ErrorSum e;
    const double C = cor1_constant(c, alpha);
    const double mf = e.take(weighted_expectation(f, make_power_weight(c + alpha), o));
    const double mg = e.take(weighted_expectation(g, make_power_weight(c + alpha), o));
    const double sf = std::pow(mf, 1.0 / (c + alpha)), sg = std::pow(mg, 1.0 / (c + alpha));
    const double nf = power(f, phi, p, o, e), ng = power(g, phi, p, o, e);
    const double lhs = std::pow(sg, C) / ng;
    const double rhs = std::pow(sf, C) / nf;
    const double ef = e.take(weighted_expectation(f, phi, o));
    const double eg = e.take(weighted_expectation(g, phi, o));
    const double t_c = std::pow(sf / sg, c * (c + alpha) / alpha);
    std::vector<Flag> margins{{"E_f|X|^c-E_G|X|^c", ef - eg, false}};
    if (p == 1.0) margins.push_back({"E_f|X|^c-t_c*E_G|X|^c", ef - t_c * eg, false});
    auto v = make_verdict("mei-power-weight", lhs, rhs, e.rel * (std::abs(lhs) + std::abs(rhs)), margins, opt.tol);
    v.terms = {{"C_alpha", C},   {"t_c", t_c}, {"sigma_c_alpha_f", sf}, {"sigma_c_alpha_G", sg},
               {"N_phi_f", nf}, {"N_phi_G", ng}, {"E_f_phi", ef}, {"E_G_phi", eg}};
    out.push_back(std::move(v));
  }
  {
    ErrorSum e;
    const double ec = e.take(weighted_expectation(f, phi, o));
    const double ec1 = e.take(weighted_expectation(f, make_power_weight(c + 1.0), o));
    const double n1 = power(f, phi, 1.0, o, e);
    const double cf = num::factorial(c);
    const double lhs = num::factorial(c + 1.0) * n1 / (2.0 * std::exp(c + 1.0));
    std::vector<Flag> margins{{"E_f|X|^c-c!", ec - cf, false},
                              {"E_f|X|^c-(E_f|X|^{c+1})^c/(c+1)", ec - std::pow(ec1, c) / (c + 1.0), false}};
    auto v = make_verdict("mei-power-weight-laplace", lhs, ec1, e.rel * (std::abs(lhs) + std::abs(ec1)), margins,
                          opt.tol);
    const double gap = max_pdf_gap(f, make_laplace(1.0));
    v.equality = v.equality && gap <= 1e-6;
    v.terms = {{"N_phi_1_f", n1}, {"E_f|X|^c", ec}, {"E_f|X|^{c+1}", ec1}, {"max_pdf_gap_to_laplace", gap}};
    out.push_back(std::move(v));
  }
  return out;
}

double cor2_constant(double c) {
  return std::pow(2.0, 2.0 - c) / (std::pow(c + 3.0, 2.0 - c) * std::pow(c + 2.0, 1.0 - c));
}

InequalityVerdict check_cor2(const Density& f, double c, const VerdictOptions& opt) {
  if (!(c > -2.0)) throw InputError("c must exceed -2");
  const auto& o = opt.measure;
  ErrorSum e;
  const double m = cor2_constant(c);
  const double e1 = e.take(weighted_expectation(f, make_power_weight(c + 1.0), o));
  const double ec = e.take(weighted_expectation(f, make_power_weight(c), o));
  const double lhs = m * std::pow(e1, c - 1.0);
  const double rhs = e.take(weighted_power_integral(f, make_power_weight(c), 2.0, o));
  const double threshold = 2.0 / ((c + 2.0) * (c + 1.0));
  auto v = make_verdict("tent-moment-bound", lhs, rhs, e.rel * (std::abs(lhs) + std::abs(rhs)),
                        {{"E_f|X|^c-2/((c+2)(c+1))", ec - threshold, false}}, opt.tol);
  const double gap = max_pdf_gap(f, make_tent());
  v.equality = v.equality && gap <= 1e-6;
  v.terms = {{"m_c", m}, {"E_f|X|^{c+1}", e1}, {"E_f|X|^c", ec}, {"max_pdf_gap_to_tent", gap}};
  return v;
}

double cor3_constant(const MeasureOptions& o) {
  const Density g = make_generalized_gaussian(2.0, 2.0);
  const double j52 = fisher_information(g, 2.0, 2.5, o).value;
  const double jw = weighted_fisher_information(g, make_power_weight(2.0), 2.0, 2.0, o).value;
  return std::pow(j52, 10.0) * std::pow(jw, -1.5);
}

InequalityVerdict check_cor3(const Density& f, const VerdictOptions& opt) {
  const auto& o = opt.measure;
  const Density g = make_generalized_gaussian(2.0, 2.0);
  ErrorSum e;
  const double j22 = e.take(fisher_information(g, 2.0, 2.0, o));
  const double j52 = e.take(fisher_information(g, 2.0, 2.5, o));
  const double jw = e.take(weighted_fisher_information(g, make_power_weight(2.0), 2.0, 2.0, o));
  const double w = std::pow(j52, 10.0) * std::pow(jw, -1.5);
  const double s2 = e.take(generalized_deviation(f, make_constant_weight(), 2.0, o));
  const double x2f2 = e.take(weighted_power_integral(f, make_power_weight(2.0), 2.0, o));
  const double x4 = e.take(weighted_expectation(f, make_power_weight(4.0), o));
  const double lhs = 1.0 / x2f2;
  const double rhs = 2.0 * w * std::pow(x4, 1.5);
  auto v = make_verdict("parabola-moment-bound", lhs, rhs, e.rel * (std::abs(lhs) + std::abs(rhs)),
                        {{"sigma_2(f)-(2/3)J_{2,2}(G)^2", s2 - 2.0 / 3.0 * j22 * j22, false}}, opt.tol);
  const double gap = max_pdf_gap(f, g);
  v.equality = v.equality && gap <= 1e-6;
  v.terms = {{"w_G", w},          {"J_2_2_G", j22}, {"J_2_5/2_G", j52}, {"J_w_x2_2_2_G", jw},
             {"sigma_2_f", s2}, {"int_x2_f2", x2f2}, {"E_f_x4", x4}, {"max_pdf_gap_to_G", gap}};
  return v;
}

// --- Fisher information and Cramer-Rao ---

namespace {

void require_fisher_order(double alpha, double p) {
  if (alpha == kInf) {
    if (!(p > 0.0) || p == 1.0) throw InputError("alpha = inf needs p > 0, p != 1");
    return;
  }
  if (!(alpha >= 1.0)) throw InputError("Fisher inequalities need alpha in [1, inf]");
  require_order(alpha, p);
}

WeightFunction rho_one(const WeightFunction& phi, double alpha, double p) {
  return power_of(phi, alpha / (1.0 - p));
}

}  // namespace

FiiTerms fii_terms(const TransportMap& s, const WeightFunction& phi, double alpha, double p,
                   const MeasureOptions& o) {
  const Density& f = s.source();
  const Density& g = s.target();
  const auto map = s.as_map();
  FiiTerms t{phi, phi, phi, compose_with_map(phi, map)};
  if (p == 1.0) return t;
  const double beta = holder_conjugate(alpha);
  if (std::isfinite(alpha)) {
    t.rho1 = rho_one(phi, alpha, p);
    if (std::isfinite(beta)) t.rho2 = power_of(phi, p * beta / (p - 1.0));
  }
  t.rho_s = derive_rho_s(phi, map, p);
  if (!phi.is_constant()) {
    ErrorSum e;
    t.eta = integrate_on(
        f,
        [&](double x) {
          const double fx = f.pdf(x);
          if (!(fx > 0.0)) return 0.0;
          return s(x) * t.rho_s.derivative(x) * std::pow(fx, p);
        },
        o, "eta", e);
  }
  if (std::isfinite(alpha)) {
    const double n_rho1 = weighted_renyi_power(g, t.rho1, p, o).value;
    t.kappa = t.eta * std::pow(n_rho1, p - 1.0);
    const auto laws = gaussian_laws(alpha, p);
    if (phi.is_constant()) {
      t.lambda_ratio = 1.0;
    } else if (p > 1.0) {
      t.lambda_ratio = lambda_tilde(t.rho1, p, alpha, laws.deviation_law) /
                       lambda_tilde(t.rho1, p, alpha, laws.entropy_law);
    } else {
      t.lambda_ratio = lambda_bar(t.rho1, p, alpha, laws.deviation_law) /
                       lambda_bar(t.rho1, p, alpha, laws.entropy_law);
    }
  } else {
    const auto ad = antiderivatives(phi);
    t.psi_bar_difference = ad.psi_bar(1.0) - ad.psi_bar(-1.0);
    const double jg = weighted_fisher_information(g, phi, kInf, p, o).value;
    t.delta = (t.eta / p - std::pow(2.0, -1.0 - p) * t.psi_bar_difference) / jg;
  }
  return t;
}

FiiTerms fii_terms(const Density& f, const WeightFunction& phi, double alpha, double p, const MeasureOptions& o) {
  require_fisher_order(alpha, p);
  return fii_terms(build_transport(f, make_generalized_gaussian(alpha, p)), phi, alpha, p, o);
}

namespace {

struct FiiSides {
  double lhs = 0.0;
  double rhs = 0.0;
  ErrorSum err;
  std::vector<std::pair<std::string, double>> terms;
  std::vector<std::string> notes;
};

FiiSides fii_sides(const Density& f, const WeightFunction& phi, double alpha, double p, const MeasureOptions& o,
                   const TransportMap& s, const FiiTerms& t) {
  const Density& g = s.target();
  FiiSides out;
  ErrorSum& e = out.err;
  const double beta = holder_conjugate(alpha);
  out.terms = {{"eta", t.eta}, {"kappa", t.kappa}, {"transport_cdf_mismatch", s.max_cdf_mismatch()}};
  if (!s.increasing()) out.notes.push_back("transport map not increasing on the probe grid");

  if (alpha == kInf) {
    const double ng = power(g, phi, p, o, e), nf = power(f, phi, p, o, e);
    out.lhs = std::pow(ng / nf, p);
    const double jf = e.take(weighted_fisher_information(f, t.rho_s, kInf, p, o));
    const double jg = e.take(weighted_fisher_information(g, phi, kInf, p, o));
    out.rhs = jf / jg - t.delta;
    out.terms.insert(out.terms.end(), {{"N_phi_G", ng},
                                       {"N_phi_f", nf},
                                       {"J_rho_s_f", jf},
                                       {"J_phi_G", jg},
                                       {"delta", t.delta},
                                       {"psi_bar_difference", t.psi_bar_difference}});
    return out;
  }
  if (p == 1.0) {
    const double eg = e.take(weighted_expectation(g, phi, o));
    const double ng = power(g, phi, 1.0, o, e);
    const double nf = power(f, t.phi_tilde, 1.0, o, e);
    out.lhs = std::pow(ng * eg / nf, eg);
    double jratio = 1.0;
    if (std::isfinite(beta)) {
      const double jf = e.take(weighted_fisher_information(f, t.phi_tilde, alpha, 1.0, o));
      const double jg = e.take(weighted_fisher_information(g, phi, alpha, 1.0, o));
      jratio = std::pow(jf / jg, 1.0 / beta);
      out.terms.push_back({"J_phitilde_f", jf});
      out.terms.push_back({"J_phi_G", jg});
    }
    const double th = theta(phi, alpha, AuxiliaryLaw::gamma((alpha + 1.0) / alpha));
    double es = 0.0;
    if (!phi.is_constant())
      es = integrate_on(
          f,
          [&](double x) {
            const double fx = f.pdf(x);
            if (!(fx > 0.0)) return 0.0;
            const double sx = s(x);
            return sx * s.derivative(x) * phi.derivative(sx) * fx;
          },
          o, "E_f[S phi~']", e);
    out.rhs = 0.5 * jratio * th - es;
    out.terms.insert(out.terms.end(),
                     {{"E_G_phi", eg}, {"N_phi_1_G", ng}, {"N_phitilde_1_f", nf}, {"theta_W", th}, {"E_f_S_dphitilde", es}});
    return out;
  }
  const double ng = power(g, phi, p, o, e);
  const double nr = power(g, t.rho1, p, o, e);
  const double nf = power(f, phi, p, o, e);
  out.lhs = (ng / nr) * std::pow(nr / nf, p);
  double jratio = 1.0;
  if (std::isfinite(beta)) {
    const double jf = e.take(weighted_fisher_information(f, t.rho2, alpha, p, o));
    const double jg = e.take(weighted_fisher_information(g, t.rho1, alpha, p, o));
    jratio = std::pow(jf / jg, 1.0 / beta);
    out.terms.push_back({"J_rho2_f", jf});
    out.terms.push_back({"J_rho1_G", jg});
  } else {
    out.notes.push_back("alpha = 1: the Fisher ratio enters with exponent 1/beta = 0");
  }
  out.rhs = jratio * t.lambda_ratio - t.kappa;
  out.terms.insert(out.terms.end(),
                   {{"N_phi_G", ng}, {"N_rho1_G", nr}, {"N_phi_f", nf}, {"lambda_ratio", t.lambda_ratio}});
  if (p < 1.0) out.notes.push_back("p < 1: Lambda-bar ratio over the p < 1 laws");
  return out;
}

}  // namespace

InequalityVerdict check_fii(const Density& f, const WeightFunction& phi, double alpha, double p,
                            const VerdictOptions& opt) {
  require_fisher_order(alpha, p);
  const auto s = build_transport(f, make_generalized_gaussian(alpha, p));
  const auto t = fii_terms(s, phi, alpha, p, opt.measure);
  auto sides = fii_sides(f, phi, alpha, p, opt.measure, s, t);
  auto v = make_verdict("fii", sides.lhs, sides.rhs, sides.err.rel * (std::abs(sides.lhs) + std::abs(sides.rhs)), {},
                        opt.tol);
  v.terms = std::move(sides.terms);
  v.notes = std::move(sides.notes);
  return v;
}

double cri_varpi(const Density& f, const WeightFunction& phi, double alpha, double p, const MeasureOptions& o) {
  require_fisher_order(alpha, p);
  if (p == 1.0 || !std::isfinite(alpha)) throw InputError("varpi needs a finite alpha and p != 1");
  const Density g = make_generalized_gaussian(alpha, p);
  const double sf = generalized_deviation(f, phi, alpha, o).value;
  const double sg = generalized_deviation(g, phi, alpha, o).value;
  const auto phi_star = derive_phi_star(phi, sf, sg);
  const double a = weighted_renyi_power(g, phi_star, p, o).value;
  const double b = weighted_renyi_power(g, rho_one(phi, alpha, p), p, o).value;
  const double c = weighted_renyi_power(g, phi, p, o).value;
  const double d = weighted_renyi_power(f, phi, p, o).value;
  return a * b / (c * d);
}

InequalityVerdict check_cri(const Density& f, const WeightFunction& phi, double alpha, double p,
                            const VerdictOptions& opt) {
  require_fisher_order(alpha, p);
  const auto& o = opt.measure;
  const Density g = make_generalized_gaussian(alpha, p);
  const auto s = build_transport(f, g);
  const auto t = fii_terms(s, phi, alpha, p, o);
  auto sides = fii_sides(f, phi, alpha, p, o, s, t);
  ErrorSum& e = sides.err;

  const double sf = e.take(generalized_deviation(f, phi, alpha, o));
  const double sg = e.take(generalized_deviation(g, phi, alpha, o));
  const auto phi_star = derive_phi_star(phi, sf, sg);
  const double ef = e.take(weighted_expectation(f, phi, o));
  const double eg = e.take(weighted_expectation(g, phi, o));
  std::vector<Flag> margins{{"E_f[phi]-E_G[phi]", ef - eg, false}};
  double lhs;
  if (alpha == kInf) {
    lhs = sg / sf;
  } else if (p == 1.0) {
    margins.push_back({"E_f[phi]-E_G[phi*]", ef - e.take(weighted_expectation(g, phi_star, o)), false});
    lhs = std::pow(sg * eg / sf, eg);
  } else {
    const double varpi = power(g, phi_star, p, o, e) * power(g, t.rho1, p, o, e) /
                         (power(g, phi, p, o, e) * power(f, phi, p, o, e));
    lhs = sg / sf * std::pow(varpi, p - 1.0);
    sides.terms.push_back({"varpi", varpi});
    if (p < 1.0) sides.notes.push_back("p < 1: the p > 1 deviation form applied");
  }
  auto v = make_verdict("cri", lhs, sides.rhs, e.rel * (std::abs(lhs) + std::abs(sides.rhs)), margins, opt.tol);
  v.terms = std::move(sides.terms);
  v.terms.insert(v.terms.end(), {{"sigma_f", sf}, {"sigma_G", sg}, {"E_f_phi", ef}, {"E_G_phi", eg},
                                 {"fii_lhs", sides.lhs}});
  v.notes = std::move(sides.notes);
  return v;
}

// --- Laplace-target transport bounds ---

namespace {

double log_score_sup(const Density& f, const std::function<double(double)>& w) {
  return num::essential_supremum(
      [&](double x) {
        const double fx = f.pdf(x);
        if (!(fx > 0.0)) return 0.0;
        return w(x) * std::abs(f.derivative(x) / fx);
      },
      open_support(f), f.hints());
}

}  // namespace

InequalityVerdict check_cor4_power(const Density& f, double c, const VerdictOptions& opt) {
  if (!(c > -1.0)) throw InputError("the power form needs c > -1");
  const auto& o = opt.measure;
  const auto s = build_transport(f, make_laplace(1.0));
  ErrorSum e;
  const auto w = compose_with_map(make_power_weight(c), s.as_map());
  const double n = power(f, w, 1.0, o, e);
  const double cf = num::factorial(c);
  const double lhs = std::pow(2.0 * cf * std::exp(std::pow(2.0, c)) / n, cf);
  const double sup = log_score_sup(f, [&](double x) { return std::pow(std::abs(s(x)), c); });
  double a = 0.0;
  if (c != 0.0)
    a = integrate_on(
        f,
        [&](double x) {
          const double fx = f.pdf(x);
          if (!(fx > 0.0)) return 0.0;
          const double sx = s(x);
          return sx == 0.0 ? 0.0 : std::pow(std::abs(sx), c) * s.derivative(x) * fx;
        },
        o, "A_s", e);
  const double rhs = cf * std::pow(2.0, c) * sup - c * a;
  auto v = make_verdict("laplace-transport-bound-power", lhs, rhs, e.rel * (std::abs(lhs) + std::abs(rhs)), {},
                        opt.tol);
  v.terms = {{"N_|s|^c_1_f", n}, {"c!", cf}, {"sup_|s|^c_dlogf", sup}, {"A_s", a}};
  return v;
}

InequalityVerdict check_cor4_exponential(const Density& f, double c, const VerdictOptions& opt) {
  if (!(std::abs(c) < 0.5)) throw InputError("the exponential form needs |c| < 1/2");
  const auto& o = opt.measure;
  const auto s = build_transport(f, make_laplace(1.0));
  ErrorSum e;
  const auto w = compose_with_map(make_exp_weight(-c), s.as_map());
  const double n = power(f, w, 1.0, o, e);
  const double q = 1.0 - 4.0 * c * c, r = 1.0 - c * c;
  const double lhs = q * std::pow(2.0 * std::exp(r / q) / (r * n), 1.0 / r);
  const double sup = log_score_sup(f, [&](double x) { return std::exp(-c * s(x)); });
  double b = 0.0;
  if (c != 0.0)
    b = integrate_on(
        f,
        [&](double x) {
          const double fx = f.pdf(x);
          if (!(fx > 0.0)) return 0.0;
          const double sx = s(x);
          return sx * s.derivative(x) * std::exp(-c * sx) * fx;
        },
        o, "B_s", e);
  const double rhs = sup + c * q * b;
  auto v = make_verdict("laplace-transport-bound-exponential", lhs, rhs, e.rel * (std::abs(lhs) + std::abs(rhs)), {},
                        opt.tol);
  v.terms = {{"N_e^{-cs}_1_f", n}, {"sup_e^{-cs}_dlogf", sup}, {"B_s", b}};
  return v;
}

std::vector<InequalityVerdict> check_cor4(const Density& f, double c, const VerdictOptions& opt) {
  std::vector<InequalityVerdict> out{check_cor4_power(f, c, opt)};
  if (std::abs(c) < 0.5) out.push_back(check_cor4_exponential(f, c, opt));
  return out;
}

// --- integration by parts ---

PartsResidual lemma4_residual(const MapFn& f, const MapFn& g, num::Interval dom, std::vector<double> hints,
                              const num::QuadratureConfig& cfg) {
  PartsResidual r;
  auto a = num::integrate([&](double x) { return f.value(x) * g.derivative(x); }, dom, hints, cfg);
  auto b = num::integrate([&](double x) { return f.derivative(x) * g.value(x); }, dom, hints, cfg);
  if (a.status == num::QuadStatus::divergent || b.status == num::QuadStatus::divergent)
    throw DomainError("integration by parts: an integral diverges");
  r.int_f_dg = a.value;
  r.int_df_g = b.value;
  r.residual = std::abs(a.value + b.value) / (1.0 + std::abs(a.value));
  auto end_value = [&](double x, double sign) {
    if (std::isfinite(x)) return std::abs(f.value(x));
    return std::abs(f.value(sign * 1e8));
  };
  r.boundary = std::max(end_value(dom.lo, -1.0), end_value(dom.hi, 1.0));
  r.boundary_ok = r.boundary <= 1e-8;
  return r;
}

}  // namespace wrenyi
