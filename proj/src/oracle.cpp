#include "wrenyi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "wrenyi/errors.hpp"
#include "wrenyi/measures.hpp"
#include "wrenyi/transport.hpp"

namespace wrenyi::oracle {

void OracleConfig::validate() const {
  if (grid < 1000) throw InputError("oracle grid must have at least 1000 points");
  if (draws < 10000) throw InputError("oracle needs at least 10000 draws");
  if (!(clip > 0.0 && clip < 0.5)) throw InputError("oracle clip must be in (0, 1/2)");
}

namespace {

double midpoint_sum(const std::function<double(double)>& fn, double lo, double hi, long n) {
  const double h = (hi - lo) / static_cast<double>(n);
  // blocked pairwise accumulation keeps the rounding below the grid error
  double total = 0.0;
  constexpr long kBlock = 4096;
  for (long b = 0; b < n; b += kBlock) {
    double part = 0.0;
    const long e = std::min(n, b + kBlock);
    for (long i = b; i < e; ++i) {
      const double v = fn(lo + (static_cast<double>(i) + 0.5) * h);
      if (!std::isfinite(v)) throw EvaluationError("oracle: integrand not finite on the grid");
      part += v;
    }
    total += part;
  }
  return total * h;
}

// Doubling scan away from a finite anchor until |fn| falls under level.
double cut_point(const std::function<double(double)>& fn, double anchor, double dir, double clip, double* tail) {
  double peak = 0.0;
  double step = 1.0;
  double x = anchor;
  double prev_v = std::abs(fn(anchor));
  peak = prev_v;
  for (int i = 0; i < 80; ++i) {
    const double nx = anchor + dir * step;
    const double v = std::abs(fn(nx));
    if (!std::isfinite(v)) throw EvaluationError("oracle: integrand not finite while scanning a tail");
    peak = std::max(peak, v);
    if (peak > 0.0 && v < clip * peak && prev_v < clip * peak * 10.0 && step >= 8.0) {
      // tail beyond nx is no bigger than the last step's trapezoid
      *tail = 0.5 * (v + prev_v) * (nx - x) * dir;
      return nx;
    }
    prev_v = v;
    x = nx;
    step *= 2.0;
  }
  throw EvaluationError("oracle: integrand does not decay in the tail");
}

}  // namespace

OracleValue riemann(const std::function<double(double)>& fn, num::Interval dom, const OracleConfig& cfg) {
  cfg.validate();
  if (std::isnan(dom.lo) || std::isnan(dom.hi) || dom.lo >= dom.hi) throw InputError("oracle: empty domain");
  OracleValue out;
  double lo = dom.lo, hi = dom.hi, t1 = 0.0, t2 = 0.0;
  if (!std::isfinite(lo) && !std::isfinite(hi)) {
    lo = cut_point(fn, 0.0, -1.0, cfg.clip, &t1);
    hi = cut_point(fn, 0.0, 1.0, cfg.clip, &t2);
  } else if (!std::isfinite(lo)) {
    lo = cut_point(fn, hi, -1.0, cfg.clip, &t1);
  } else if (!std::isfinite(hi)) {
    hi = cut_point(fn, lo, 1.0, cfg.clip, &t2);
  }
  out.value = midpoint_sum(fn, lo, hi, cfg.grid);
  out.error = std::abs(t1) + std::abs(t2);
  return out;
}

OracleValue riemann_density(const std::function<double(double)>& fn, const Density& f, const OracleConfig& cfg) {
  cfg.validate();
  const auto sup = f.support();
  auto coarse = [&](double a, double b) {
    double s = 0.0;
    const double h = (b - a) / 2000.0;
    for (int i = 0; i < 2000; ++i) s += std::abs(fn(a + (i + 0.5) * h));
    return s * std::abs(h);
  };
  // The clip quantile alone is not enough when phi grows into the tail:
  // push each infinite cut out by factors of 1e-4 in probability until the
  // next slice is negligible. The last slice is the error estimate.
  auto cut = [&](bool left, double* err) {
    double q = cfg.clip;
    double x = left ? inverse_cdf(f, q, 1.0 - q) : inverse_cdf(f, 1.0 - q, q);
    const double body = std::max(coarse(inverse_cdf(f, 0.25, 0.75), inverse_cdf(f, 0.75, 0.25)), 1e-300);
    for (int i = 0; i < 60; ++i) {
      const double nq = q * 1e-4;
      if (nq < 1e-290) break;
      const double nx = left ? inverse_cdf(f, nq, 1.0) : inverse_cdf(f, 1.0, nq);
      const double slice = coarse(nx, x);
      *err = slice;
      if (!std::isfinite(slice)) throw EvaluationError("oracle: integrand not finite in the tail");
      if (slice <= 1e-9 * body) break;
      q = nq;
      x = nx;
    }
    return x;
  };
  double lo = sup.lo, hi = sup.hi, e1 = 0.0, e2 = 0.0;
  if (!std::isfinite(lo)) lo = cut(true, &e1);
  if (!std::isfinite(hi)) hi = cut(false, &e2);
  return {midpoint_sum(fn, lo, hi, cfg.grid), e1 + e2};
}

OracleValue mc_expectation(const std::function<double(double)>& fn, const AuxiliaryLaw& law, const OracleConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  double mean = 0.0, m2 = 0.0;
  for (long i = 0; i < cfg.draws; ++i) {
    const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double v = fn(law.quantile(u));
    if (!std::isfinite(v)) throw EvaluationError("oracle: Monte-Carlo draw not finite");
    // Welford update
    const double d = v - mean;
    mean += d / static_cast<double>(i + 1);
    m2 += d * (v - mean);
  }
  const double n = static_cast<double>(cfg.draws);
  return {mean, std::sqrt(m2 / (n - 1.0) / n)};
}

CrossCheck compare(std::string name, double library, const OracleValue& oracle, double rel_tol) {
  CrossCheck c;
  c.name = std::move(name);
  c.library = library;
  c.oracle = oracle.value;
  c.oracle_error = oracle.error;
  const double diff = std::abs(library - oracle.value);
  const double scale = std::max(std::abs(library), std::abs(oracle.value));
  c.rel_diff = scale > 0.0 ? diff / scale : 0.0;
  c.pass = c.rel_diff <= rel_tol || diff <= 1e-12;
  return c;
}

CrossCheck compare_mc(std::string name, double library, const OracleValue& oracle) {
  CrossCheck c = compare(std::move(name), library, oracle, 0.0);
  const double diff = std::abs(library - oracle.value);
  c.pass = diff <= 3.0 * oracle.error || diff <= 1e-12 * std::max(1.0, std::abs(library));
  return c;
}

namespace {

double score_power(double fx, double dfx, double beta, double p) {
  if (!(fx > 0.0) || dfx == 0.0) return 0.0;
  return std::exp(beta * std::log(std::abs(dfx)) + (beta * (p - 2.0) + 1.0) * std::log(fx));
}

double holder(double alpha) { return alpha / (alpha - 1.0); }

}  // namespace

CrossCheck cross_validate(const MeasureRequest& req, const OracleConfig& cfg, double rel_tol) {
  const auto& f = req.f;
  const auto& phi = req.phi;
  const double p = req.p, alpha = req.alpha;
  const std::string name = req.measure + "(" + f.descriptor() + "; " + phi.descriptor() + ")";
  auto R = [&](const std::function<double(double)>& g) { return riemann_density(g, f, cfg); };
  auto pos = [&](const std::function<double(double, double)>& g) {
    return [&f, g](double x) {
      const double fx = f.pdf(x);
      return fx > 0.0 ? g(x, fx) : 0.0;
    };
  };
  try {
    double lib = 0.0;
    OracleValue orc;
    const auto& m = req.measure;
    if (m == "expectation") {
      lib = weighted_expectation(f, phi).value;
      orc = R(pos([&](double x, double fx) { return phi(x) * fx; }));
    } else if (m == "power-integral" || m == "wre" || m == "wrp") {
      const auto I = R(pos([&](double x, double fx) { return phi(x) * std::pow(fx, p); }));
      if (m == "power-integral") {
        lib = weighted_power_integral(f, phi, p).value;
        orc = I;
      } else if (p == 1.0) {
        throw InputError("oracle: use we for p = 1");
      } else {
        lib = m == "wre" ? weighted_renyi_entropy(f, phi, p).value : weighted_renyi_power(f, phi, p).value;
        const double h = std::log(I.value) / (1.0 - p);
        orc = {m == "wre" ? h : std::exp(h), I.error / I.value};
      }
    } else if (m == "we") {
      lib = weighted_entropy(f, phi).value;
      orc = R(pos([&](double x, double fx) { return -phi(x) * fx * std::log(fx); }));
    } else if (m == "moment") {
      lib = generalized_moment(f, phi, alpha).value;
      orc = R(pos([&](double x, double fx) { return phi(x) * std::pow(std::abs(x), alpha) * fx; }));
    } else if (m == "deviation") {
      lib = generalized_deviation(f, phi, alpha).value;
      if (alpha == 0.0) {
        const auto num = R(pos([&](double x, double fx) { return x == 0.0 ? 0.0 : phi(x) * fx * std::log(std::abs(x)); }));
        const auto den = R(pos([&](double x, double fx) { return phi(x) * fx; }));
        orc = {std::exp(num.value / den.value), num.error + den.error};
      } else if (std::isfinite(alpha)) {
        const auto mo = R(pos([&](double x, double fx) { return phi(x) * std::pow(std::abs(x), alpha) * fx; }));
        orc = {std::pow(mo.value, 1.0 / alpha), mo.error};
      } else {
        throw InputError("oracle: the alpha = inf deviation is a supremum");
      }
    } else if (m == "fisher" || m == "wfi") {
      if (!(alpha > 1.0) || !std::isfinite(alpha)) throw InputError("oracle: Fisher needs alpha in (1, inf)");
      const double beta = holder(alpha);
      if (m == "fisher") {
        lib = fisher_information(f, alpha, p).value;
        const auto raw = R(pos([&](double x, double fx) { return score_power(fx, f.derivative(x), beta, p); }));
        orc = {std::pow(raw.value, 1.0 / (beta * p)), raw.error};
      } else {
        lib = weighted_fisher_information(f, phi, alpha, p).value;
        orc = R(pos([&](double x, double fx) { return phi(x) * score_power(fx, f.derivative(x), beta, p); }));
      }
    } else {
      throw InputError("oracle: unknown measure " + m);
    }
    return compare(name, lib, orc, rel_tol);
  } catch (const std::exception& e) {
    CrossCheck c;
    c.name = name;
    c.error = e.what();
    return c;
  }
}

const std::vector<SuiteIntegrand>& integrand_suite() {
  using std::numbers::pi;
  static const double kInf = num::kInf;
  static const std::vector<SuiteIntegrand> suite = {
      {"x on [0,1]", [](double x) { return x; }, {0, 1}, {}, 0.5},
      {"exp(-x) on [0,inf)", [](double x) { return std::exp(-x); }, {0, kInf}, {}, 1.0},
      {"x^2 on [0,1]", [](double x) { return x * x; }, {0, 1}, {}, 1.0 / 3.0},
      {"sin on [0,pi]", [](double x) { return std::sin(x); }, {0, pi}, {}, 2.0},
      {"Cauchy kernel", [](double x) { return 1.0 / (1.0 + x * x); }, {-kInf, kInf}, {}, pi},
      {"Gaussian kernel", [](double x) { return std::exp(-x * x); }, {-kInf, kInf}, {}, std::sqrt(pi)},
      {"sqrt on [0,1]", [](double x) { return std::sqrt(x); }, {0, 1}, {}, 2.0 / 3.0},
      {"log on (0,1]", [](double x) { return std::log(x); }, {0, 1}, {}, -1.0},
      {"x exp(-x)", [](double x) { return x * std::exp(-x); }, {0, kInf}, {}, 1.0},
      {"tent", [](double x) { return std::max(0.0, 1.0 - std::abs(x)); }, {-1, 1}, {0.0}, 1.0},
      {"|x| on [-1,1]", [](double x) { return std::abs(x); }, {-1, 1}, {0.0}, 1.0},
      {"cos^2 on [0,pi]", [](double x) { return std::cos(x) * std::cos(x); }, {0, pi}, {}, pi / 2.0},
      {"exp(0.1x) exp(-x)", [](double x) { return std::exp(-0.9 * x); }, {0, kInf}, {}, 1.0 / 0.9},
      {"parabola density", [](double x) { return 0.75 * (1.0 - x * x); }, {-1, 1}, {}, 1.0},
      {"x^4 parabola density", [](double x) { return 0.75 * std::pow(x, 4) * (1.0 - x * x); }, {-1, 1}, {},
       3.0 / 35.0},
      {"(1+x)^-3", [](double x) { return std::pow(1.0 + x, -3.0); }, {0, kInf}, {}, 0.5},
      {"Laplace density", [](double x) { return 0.5 * std::exp(-std::abs(x)); }, {-kInf, kInf}, {0.0}, 1.0},
      {"normal second moment",
       [](double x) { return x * x * std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi); }, {-kInf, kInf}, {}, 1.0},
      {"Beta(2,3) mean", [](double z) { return z * 12.0 * z * (1.0 - z) * (1.0 - z); }, {0, 1}, {}, 0.4},
      {"Gamma(3/2) mean", [](double z) { return z * std::sqrt(z) * std::exp(-z) / std::tgamma(1.5); }, {0, kInf}, {},
       1.5},
  };
  return suite;
}

}  // namespace wrenyi::oracle
