#include "wrenyi/density.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wrenyi/calculus.hpp"
#include "wrenyi/errors.hpp"
#include "wrenyi/special.hpp"

namespace wrenyi {

std::string to_string(DensityFamily f) {
  switch (f) {
    case DensityFamily::exponential: return "exponential";
    case DensityFamily::laplace: return "laplace";
    case DensityFamily::tent: return "tent";
    case DensityFamily::generalized_gaussian: return "generalized-gaussian";
    case DensityFamily::scaled: return "scaled";
    case DensityFamily::weighted: return "weighted";
    case DensityFamily::tabulated: return "tabulated";
    case DensityFamily::perturbed: return "perturbed";
  }
  return "unknown";
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double DensityModel::derivative(double x) const {
  return num::differentiate([this](double y) { return pdf(y); }, x, support());
}

double DensityModel::cdf(double x) const {
  const auto s = support();
  if (x <= s.lo) return 0.0;
  if (x >= s.hi) return 1.0;
  num::QuadratureConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-11;
  const double v = num::integrate([this](double y) { return pdf(y); }, {s.lo, x}, hints(), cfg).value;
  return std::clamp(v, 0.0, 1.0);
}

double DensityModel::sf(double x) const {
  const auto s = support();
  if (x <= s.lo) return 1.0;
  if (x >= s.hi) return 0.0;
  num::QuadratureConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-11;
  const double v = num::integrate([this](double y) { return pdf(y); }, {x, s.hi}, hints(), cfg).value;
  return std::clamp(v, 0.0, 1.0);
}

Density::Density(std::shared_ptr<const DensityModel> model) : m_(std::move(model)) {
  if (!m_) throw InputError("Density: null model");
}

double Density::cdf(double x) const {
  if (std::isnan(x)) throw InputError("cdf: NaN argument");
  return std::clamp(m_->cdf(x), 0.0, 1.0);
}

double Density::sf(double x) const {
  if (std::isnan(x)) throw InputError("sf: NaN argument");
  return std::clamp(m_->sf(x), 0.0, 1.0);
}

bool Density::has_param(std::string_view name) const {
  for (const auto& [k, v] : params())
    if (k == name) return true;
  return false;
}

double Density::param(std::string_view name) const {
  for (const auto& [k, v] : params())
    if (k == name) return v;
  throw InputError("density " + descriptor() + " has no parameter " + std::string(name));
}

namespace {

double sgn(double x) { return (x > 0) - (x < 0); }

class ExponentialModel final : public DensityModel {
 public:
  explicit ExponentialModel(double lambda) : lambda_(lambda) {
    params_ = {{"lambda", lambda}};
  }
  double pdf(double x) const override { return x < 0 ? 0.0 : lambda_ * std::exp(-lambda_ * x); }
  double derivative(double x) const override { return -lambda_ * pdf(x); }
  double cdf(double x) const override { return x <= 0 ? 0.0 : -std::expm1(-lambda_ * x); }
  double sf(double x) const override { return x <= 0 ? 1.0 : std::exp(-lambda_ * x); }
  bool analytic_cdf() const override { return true; }
  num::Interval support() const override { return {0.0, num::kInf}; }
  DensityFamily family() const override { return DensityFamily::exponential; }
  std::string descriptor() const override { return "exp:" + format_real(lambda_); }

 private:
  double lambda_;
};

class LaplaceModel final : public DensityModel {
 public:
  explicit LaplaceModel(double b) : b_(b) {
    params_ = {{"b", b}};
    hints_ = {0.0};
  }
  double pdf(double x) const override { return std::exp(-std::abs(x) / b_) / (2.0 * b_); }
  double derivative(double x) const override { return -sgn(x) / b_ * pdf(x); }
  double cdf(double x) const override {
    return x < 0 ? 0.5 * std::exp(x / b_) : 1.0 - 0.5 * std::exp(-x / b_);
  }
  double sf(double x) const override {
    return x > 0 ? 0.5 * std::exp(-x / b_) : 1.0 - 0.5 * std::exp(x / b_);
  }
  bool analytic_cdf() const override { return true; }
  num::Interval support() const override { return {-num::kInf, num::kInf}; }
  DensityFamily family() const override { return DensityFamily::laplace; }
  std::string descriptor() const override { return "laplace:" + format_real(b_); }

 private:
  double b_;
};

class TentModel final : public DensityModel {
 public:
  TentModel() { hints_ = {0.0}; }
  double pdf(double x) const override { return std::max(0.0, 1.0 - std::abs(x)); }
  double derivative(double x) const override { return std::abs(x) < 1.0 ? -sgn(x) : 0.0; }
  double cdf(double x) const override {
    if (x <= -1) return 0.0;
    if (x >= 1) return 1.0;
    return x < 0 ? 0.5 * (1 + x) * (1 + x) : 1.0 - 0.5 * (1 - x) * (1 - x);
  }
  double sf(double x) const override { return cdf(-x); }
  bool analytic_cdf() const override { return true; }
  num::Interval support() const override { return {-1.0, 1.0}; }
  DensityFamily family() const override { return DensityFamily::tent; }
  std::string descriptor() const override { return "tent"; }
};

// G_{alpha,p}(x/t)/t. The standardized density is evaluated in y = x/t.
class GeneralizedGaussianModel final : public DensityModel {
 public:
  GeneralizedGaussianModel(double alpha, double p, double t) : alpha_(alpha), p_(p), t_(t) {
    a_ = generalized_gaussian_constant(alpha, p);
    params_ = {{"alpha", alpha}, {"p", p}, {"t", t}, {"a", a_}};
    hints_ = {0.0};
    if (alpha == 0.0 && p < 2.0)
      warnings_.push_back("pdf is unbounded at 0 (alpha = 0, 1 < p < 2)");
    if (std::isinf(alpha) || alpha == 0.0)
      half_width_ = 1.0;
    else if (p > 1.0)
      half_width_ = std::pow(p - 1.0, -1.0 / alpha);
    else
      half_width_ = num::kInf;
  }

  double pdf(double x) const override { return g(x / t_) / t_; }
  double derivative(double x) const override { return dg(x / t_) / (t_ * t_); }

  double cdf(double x) const override {
    const double y = x / t_;
    if (y == 0.0) return 0.5;
    return y < 0 ? tail(-y) : 1.0 - tail(y);
  }
  double sf(double x) const override {
    const double y = x / t_;
    if (y == 0.0) return 0.5;
    return y > 0 ? tail(y) : 1.0 - tail(-y);
  }
  bool analytic_cdf() const override { return true; }

  num::Interval support() const override { return {-half_width_ * t_, half_width_ * t_}; }
  DensityFamily family() const override { return DensityFamily::generalized_gaussian; }
  std::string descriptor() const override {
    std::string s = "gg:" + format_real(alpha_) + "," + format_real(p_);
    if (t_ != 1.0) s += "," + format_real(t_);
    return s;
  }

 private:
  double g(double y) const {
    const double ay = std::abs(y);
    if (std::isinf(alpha_)) return ay <= 1.0 ? 0.5 : 0.0;
    if (alpha_ == 0.0) {
      if (ay >= 1.0) return 0.0;
      if (ay == 0.0) return num::kInf;
      return a_ * std::pow(-std::log(ay), 1.0 / (p_ - 1.0));
    }
    if (ay > half_width_) return 0.0;
    const double ya = std::pow(ay, alpha_);
    if (p_ == 1.0) return a_ * std::exp(-ya);
    const double base = 1.0 + (1.0 - p_) * ya;
    if (base <= 0.0) return 0.0;
    return a_ * std::pow(base, 1.0 / (p_ - 1.0));
  }

  double dg(double y) const {
    const double ay = std::abs(y);
    if (y == 0.0 || std::isinf(alpha_)) return 0.0;
    if (alpha_ == 0.0) {
      if (ay >= 1.0) return 0.0;
      const double k = 1.0 / (p_ - 1.0);
      return -a_ * k * std::pow(-std::log(ay), k - 1.0) / y;
    }
    if (ay >= half_width_) return 0.0;
    const double ya = std::pow(ay, alpha_);
    const double lead = -a_ * alpha_ * std::pow(ay, alpha_ - 1.0) * sgn(y);
    if (p_ == 1.0) return lead * std::exp(-ya);
    const double base = 1.0 + (1.0 - p_) * ya;
    if (base <= 0.0) return 0.0;
    return lead * std::pow(base, (2.0 - p_) / (p_ - 1.0));
  }

  // Mass of the standardized density beyond |y| = r (one side).
  double tail(double r) const {
    if (std::isinf(alpha_)) return r >= 1.0 ? 0.0 : 0.5 * (1.0 - r);
    if (alpha_ == 0.0) {
      if (r >= 1.0) return 0.0;
      return 0.5 * num::gamma_p(p_ / (p_ - 1.0), -std::log(r));
    }
    const double ra = std::pow(r, alpha_);
    if (p_ == 1.0) return 0.5 * num::gamma_q(1.0 / alpha_, ra);
    if (p_ > 1.0) {
      const double u = (p_ - 1.0) * ra;
      if (u >= 1.0) return 0.0;
      return 0.5 * num::ibetac(1.0 / alpha_, p_ / (p_ - 1.0), u);
    }
    const double v = (1.0 - p_) * ra;
    return 0.5 * num::ibetac(1.0 / alpha_, 1.0 / (1.0 - p_) - 1.0 / alpha_, v / (1.0 + v));
  }

  double alpha_, p_, t_, a_;
  double half_width_;
};

class ScaledModel final : public DensityModel {
 public:
  ScaledModel(Density base, double s) : base_(std::move(base)), s_(s) {
    params_ = {{"s", s}};
    for (double h : base_.hints()) hints_.push_back(h * s);
    warnings_ = base_.warnings();
  }
  double pdf(double x) const override { return base_.pdf(x / s_) / s_; }
  double derivative(double x) const override { return base_.derivative(x / s_) / (s_ * s_); }
  double cdf(double x) const override { return base_.cdf(x / s_); }
  double sf(double x) const override { return base_.sf(x / s_); }
  bool analytic_cdf() const override { return base_.analytic_cdf(); }
  num::Interval support() const override {
    const auto b = base_.support();
    return {b.lo * s_, b.hi * s_};
  }
  DensityFamily family() const override { return DensityFamily::scaled; }
  std::string descriptor() const override { return "scaled:" + format_real(s_) + ";" + base_.descriptor(); }

 private:
  Density base_;
  double s_;
};

class PerturbedModel final : public DensityModel {
 public:
  PerturbedModel(Density base, double eps, double omega) : base_(std::move(base)), eps_(eps), omega_(omega) {
    params_ = {{"eps", eps}, {"omega", omega}};
    hints_ = base_.hints();
    warnings_ = base_.warnings();
    num::QuadratureConfig cfg;
    cfg.abs_tol = 1e-14;
    cfg.rel_tol = 1e-12;
    const auto r = num::integrate([this](double x) { return base_.pdf(x) * std::cos(omega_ * x); },
                                  base_.support(), hints_, cfg);
    z_ = 1.0 + eps_ * r.value;
  }
  double pdf(double x) const override { return base_.pdf(x) * (1.0 + eps_ * std::cos(omega_ * x)) / z_; }
  double derivative(double x) const override {
    return (base_.derivative(x) * (1.0 + eps_ * std::cos(omega_ * x)) -
            base_.pdf(x) * eps_ * omega_ * std::sin(omega_ * x)) /
           z_;
  }
  num::Interval support() const override { return base_.support(); }
  DensityFamily family() const override { return DensityFamily::perturbed; }
  std::string descriptor() const override {
    return "cosmod:" + format_real(eps_) + "," + format_real(omega_) + ";" + base_.descriptor();
  }

 private:
  Density base_;
  double eps_, omega_, z_ = 1.0;
};

class TabulatedModel final : public DensityModel {
 public:
  TabulatedModel(std::vector<double> xs, std::vector<double> ys, std::string source)
      : xs_(std::move(xs)), ys_(std::move(ys)), source_(std::move(source)) {
    if (xs_.size() < 2 || xs_.size() != ys_.size())
      throw InputError("tabulated density needs at least two (x, y) rows of equal length");
    for (size_t i = 0; i < xs_.size(); ++i) {
      if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i]))
        throw InputError("tabulated density: non-finite entry");
      if (ys_[i] < 0) throw InputError("tabulated density: negative pdf value");
      if (i > 0 && !(xs_[i] > xs_[i - 1]))
        throw InputError("tabulated density: x must be strictly increasing");
    }
    cum_.assign(xs_.size(), 0.0);
    for (size_t i = 1; i < xs_.size(); ++i)
      cum_[i] = cum_[i - 1] + 0.5 * (ys_[i] + ys_[i - 1]) * (xs_[i] - xs_[i - 1]);
    const double mass = cum_.back();
    if (!(mass > 0)) throw InputError("tabulated density has zero mass");
    for (auto& y : ys_) y /= mass;
    for (auto& c : cum_) c /= mass;
    hints_ = xs_;
    params_ = {{"nodes", static_cast<double>(xs_.size())}, {"raw_mass", mass}};
  }

  double pdf(double x) const override {
    size_t i = 0;
    if (!locate(x, &i)) return 0.0;
    const double w = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
    return ys_[i] + w * (ys_[i + 1] - ys_[i]);
  }
  double derivative(double x) const override {
    size_t i = 0;
    if (!locate(x, &i)) return 0.0;
    return (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
  }
  double cdf(double x) const override {
    if (x <= xs_.front()) return 0.0;
    if (x >= xs_.back()) return 1.0;
    size_t i = 0;
    locate(x, &i);
    const double h = x - xs_[i];
    const double slope = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
    return cum_[i] + ys_[i] * h + 0.5 * slope * h * h;
  }
  double sf(double x) const override { return 1.0 - cdf(x); }
  bool analytic_cdf() const override { return true; }
  num::Interval support() const override { return {xs_.front(), xs_.back()}; }
  DensityFamily family() const override { return DensityFamily::tabulated; }
  std::string descriptor() const override { return "table:" + source_; }

 private:
  bool locate(double x, size_t* i) const {
    if (x < xs_.front() || x > xs_.back()) return false;
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    size_t k = static_cast<size_t>(it - xs_.begin());
    if (k == 0) k = 1;
    if (k >= xs_.size()) k = xs_.size() - 1;
    *i = k - 1;
    return true;
  }

  std::vector<double> xs_, ys_, cum_;
  std::string source_;
};

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v))
    throw InputError(std::string(what) + " must be a positive finite number");
}

}  // namespace

bool generalized_gaussian_valid(double alpha, double p) {
  if (!(p > 0) || !std::isfinite(p) || std::isnan(alpha) || alpha < 0) return false;
  if (alpha == 0.0) return p > 1.0;
  if (std::isinf(alpha)) return true;
  return p > 1.0 - alpha;
}

double generalized_gaussian_constant(double alpha, double p) {
  if (!generalized_gaussian_valid(alpha, p))
    throw InputError("generalized Gaussian needs p > 0, p > 1 - alpha (and p > 1 when alpha = 0); got alpha=" +
                     format_real(alpha) + ", p=" + format_real(p));
  if (std::isinf(alpha)) return 0.5;
  if (alpha == 0.0) return 1.0 / (2.0 * num::gamma_fn(p / (p - 1.0)));
  if (p == 1.0) return alpha / (2.0 * num::gamma_fn(1.0 / alpha));
  if (p > 1.0)
    return alpha * std::pow(p - 1.0, 1.0 / alpha) / (2.0 * num::beta_fn(1.0 / alpha, p / (p - 1.0)));
  return alpha * std::pow(1.0 - p, 1.0 / alpha) /
         (2.0 * num::beta_fn(1.0 / alpha, 1.0 / (1.0 - p) - 1.0 / alpha));
}

Density make_exponential(double lambda) {
  require_positive(lambda, "exponential rate");
  return Density(std::make_shared<ExponentialModel>(lambda));
}

Density make_laplace(double b) {
  require_positive(b, "laplace scale");
  return Density(std::make_shared<LaplaceModel>(b));
}

Density make_tent() { return Density(std::make_shared<TentModel>()); }

Density make_generalized_gaussian(double alpha, double p, double t) {
  require_positive(t, "generalized Gaussian scale");
  generalized_gaussian_constant(alpha, p);  // validates
  return Density(std::make_shared<GeneralizedGaussianModel>(alpha, p, t));
}

Density make_uniform() { return make_generalized_gaussian(num::kInf, 1.0); }

Density scale_density(const Density& f, double s) {
  require_positive(s, "scale factor");
  return Density(std::make_shared<ScaledModel>(f, s));
}

Density make_cosine_perturbation(const Density& f, double eps, double omega) {
  if (!(std::abs(eps) < 1.0)) throw InputError("perturbation amplitude must satisfy |eps| < 1");
  if (!std::isfinite(omega)) throw InputError("perturbation frequency must be finite");
  return Density(std::make_shared<PerturbedModel>(f, eps, omega));
}

Density make_tabulated(std::vector<double> xs, std::vector<double> ys, std::string source) {
  return Density(std::make_shared<TabulatedModel>(std::move(xs), std::move(ys), std::move(source)));
}

Density load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open table file: " + path);
  std::vector<double> xs, ys;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double x, y;
    if (!(ss >> x >> y)) {
      if (xs.empty() && lineno == 1) continue;  // header
      throw InputError(path + ":" + std::to_string(lineno) + ": expected two numbers");
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  return make_tabulated(std::move(xs), std::move(ys), path);
}

}  // namespace wrenyi
