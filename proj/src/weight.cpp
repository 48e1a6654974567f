#include "wrenyi/weight.hpp"

#include <cmath>
#include <numeric>

#include "wrenyi/calculus.hpp"
#include "wrenyi/errors.hpp"

namespace wrenyi {

std::string to_string(WeightFamily f) {
  switch (f) {
    case WeightFamily::constant: return "constant";
    case WeightFamily::exp_linear: return "exp-linear";
    case WeightFamily::power: return "power";
    case WeightFamily::abs_polynomial: return "abs-polynomial";
    case WeightFamily::density_polynomial: return "density-polynomial";
    case WeightFamily::density_power: return "density-power";
    case WeightFamily::composed: return "composed";
    case WeightFamily::power_of: return "power-of";
    case WeightFamily::product: return "product";
    case WeightFamily::derived: return "derived";
  }
  return "unknown";
}

double holder_conjugate(double alpha) {
  if (std::isinf(alpha)) return 1.0;
  if (alpha == 1.0) return num::kInf;
  return alpha / (alpha - 1.0);
}

MapFn identity_map() {
  return {[](double x) { return x; }, [](double) { return 1.0; }, "identity"};
}

MapFn linear_map(double ratio) {
  return {[ratio](double x) { return ratio * x; }, [ratio](double) { return ratio; },
          "linear:" + format_real(ratio)};
}

WeightFunction::WeightFunction(std::shared_ptr<const WeightModel> model) : m_(std::move(model)) {
  if (!m_) throw InputError("WeightFunction: null model");
}

bool WeightFunction::has_param(std::string_view name) const {
  for (const auto& [k, v] : params())
    if (k == name) return true;
  return false;
}

double WeightFunction::param(std::string_view name) const {
  for (const auto& [k, v] : params())
    if (k == name) return v;
  throw InputError("weight " + descriptor() + " has no parameter " + std::string(name));
}

bool WeightFunction::exp_linear_form(double* scale, double* gamma) const {
  double s = 1, g = 0;
  if (!m_->exp_linear(&s, &g)) return false;
  if (scale) *scale = s;
  if (gamma) *gamma = g;
  return true;
}

namespace {

double sgn(double x) { return (x > 0) - (x < 0); }

class ConstantModel final : public WeightModel {
 public:
  explicit ConstantModel(double v) : v_(v) { params_ = {{"v", v}}; }
  double value(double) const override { return v_; }
  double derivative(double) const override { return 0.0; }
  WeightFamily family() const override { return WeightFamily::constant; }
  std::string descriptor() const override { return "const:" + format_real(v_); }
  std::optional<double> psi(double x) const override { return v_ * x; }
  bool exp_linear(double* s, double* g) const override {
    *s = v_;
    *g = 0.0;
    return true;
  }

 private:
  double v_;
};

class ExpModel final : public WeightModel {
 public:
  ExpModel(double scale, double gamma) : scale_(scale), gamma_(gamma) {
    params_ = {{"gamma", gamma}};
    if (scale != 1.0) params_.push_back({"scale", scale});
  }
  double value(double x) const override { return scale_ * std::exp(gamma_ * x); }
  double derivative(double x) const override { return gamma_ * value(x); }
  WeightFamily family() const override { return WeightFamily::exp_linear; }
  std::string descriptor() const override {
    std::string s = "expw:" + format_real(gamma_);
    if (scale_ != 1.0) s = format_real(scale_) + "*" + s;
    return s;
  }
  std::optional<double> psi(double x) const override {
    if (gamma_ == 0.0) return scale_ * x;
    return scale_ * std::expm1(gamma_ * x) / gamma_;
  }
  bool exp_linear(double* s, double* g) const override {
    *s = scale_;
    *g = gamma_;
    return true;
  }

 private:
  double scale_, gamma_;
};

class PowerModel final : public WeightModel {
 public:
  explicit PowerModel(double c) : c_(c) {
    params_ = {{"c", c}};
    hints_ = {0.0};
  }
  double value(double x) const override {
    if (c_ == 0.0) return 1.0;
    return std::pow(std::abs(x), c_);
  }
  double derivative(double x) const override {
    if (c_ == 0.0) return 0.0;
    if (x == 0.0) return c_ >= 1.0 ? 0.0 : num::kInf;
    return c_ * std::pow(std::abs(x), c_ - 1.0) * sgn(x);
  }
  WeightFamily family() const override { return WeightFamily::power; }
  std::string descriptor() const override { return "pow:" + format_real(c_); }
  std::optional<double> psi(double x) const override {
    if (!(c_ > -1.0)) return std::nullopt;
    return sgn(x) * std::pow(std::abs(x), c_ + 1.0) / (c_ + 1.0);
  }

 private:
  double c_;
};

class AbsPolyModel final : public WeightModel {
 public:
  explicit AbsPolyModel(std::vector<double> a) : a_(std::move(a)) {
    for (size_t i = 0; i < a_.size(); ++i) params_.push_back({"a" + std::to_string(i), a_[i]});
    hints_ = {0.0};
    for (double v : a_)
      if (v < 0) {
        warnings_.push_back("abs-polynomial has negative coefficients; phi may be negative");
        break;
      }
  }
  double value(double x) const override {
    const double ax = std::abs(x);
    double r = 0.0;
    for (size_t i = a_.size(); i-- > 0;) r = r * ax + a_[i];
    return r;
  }
  double derivative(double x) const override {
    const double ax = std::abs(x);
    double r = 0.0;
    for (size_t i = a_.size(); i-- > 1;) r = r * ax + static_cast<double>(i) * a_[i];
    return r * sgn(x);
  }
  WeightFamily family() const override { return WeightFamily::abs_polynomial; }
  std::string descriptor() const override {
    std::string s = "abspoly:";
    for (size_t i = 0; i < a_.size(); ++i) s += (i ? "," : "") + format_real(a_[i]);
    return s;
  }
  std::optional<double> psi(double x) const override {
    const double ax = std::abs(x);
    double r = 0.0;
    for (size_t i = 0; i < a_.size(); ++i)
      r += a_[i] * std::pow(ax, static_cast<double>(i + 1)) / static_cast<double>(i + 1);
    return sgn(x) * r;
  }

 private:
  std::vector<double> a_;
};

class DensityPolyModel final : public WeightModel {
 public:
  DensityPolyModel(Density f, std::vector<double> b) : f_(std::move(f)), b_(std::move(b)) {
    for (size_t i = 0; i < b_.size(); ++i) params_.push_back({"b" + std::to_string(i), b_[i]});
    hints_ = f_.hints();
  }
  double value(double x) const override {
    const double fx = f_.pdf(x);
    double r = 0.0;
    for (size_t i = b_.size(); i-- > 0;) r = r * fx + b_[i];
    return r;
  }
  double derivative(double x) const override {
    const double fx = f_.pdf(x);
    double r = 0.0;
    for (size_t i = b_.size(); i-- > 1;) r = r * fx + static_cast<double>(i) * b_[i];
    return r * f_.derivative(x);
  }
  WeightFamily family() const override { return WeightFamily::density_polynomial; }
  std::string descriptor() const override {
    std::string s = "fpoly:";
    for (size_t i = 0; i < b_.size(); ++i) s += (i ? "," : "") + format_real(b_[i]);
    return s;
  }
  const Density& density() const { return f_; }
  const std::vector<double>& coeffs() const { return b_; }

 private:
  Density f_;
  std::vector<double> b_;
};

class DensityPowerModel final : public WeightModel {
 public:
  DensityPowerModel(Density f, double k, double m) : f_(std::move(f)), k_(k), m_(m) {
    params_ = {{"k", k}, {"m", m}};
    hints_ = f_.hints();
  }
  double value(double x) const override {
    const double fx = f_.pdf(x);
    const double d = std::abs(f_.derivative(x));
    if (m_ != 0.0 && d == 0.0) return m_ > 0 ? 0.0 : num::kInf;
    return std::pow(fx, k_) * (m_ == 0.0 ? 1.0 : std::pow(d, m_));
  }
  double derivative(double x) const override {
    const auto s = f_.support();
    return num::differentiate([this](double y) { return value(y); }, x, s);
  }
  WeightFamily family() const override { return WeightFamily::density_power; }
  std::string descriptor() const override { return "fpow:" + format_real(k_) + "," + format_real(m_); }

 private:
  Density f_;
  double k_, m_;
};

class ComposedModel final : public WeightModel {
 public:
  ComposedModel(WeightFunction phi, MapFn s, std::optional<double> ratio)
      : phi_(std::move(phi)), s_(std::move(s)), ratio_(ratio) {
    if (ratio_) {
      params_ = {{"ratio", *ratio_}};
      for (double h : phi_.hints()) hints_.push_back(h / *ratio_);
    }
  }
  double value(double x) const override { return phi_(s_.value(x)); }
  double derivative(double x) const override {
    const double ds = s_.derivative(x);
    if (ds == 0.0) return 0.0;
    return ds * phi_.derivative(s_.value(x));
  }
  WeightFamily family() const override { return WeightFamily::composed; }
  std::string descriptor() const override { return "compose(" + phi_.descriptor() + "," + s_.name + ")"; }
  bool exp_linear(double* sc, double* g) const override {
    if (!ratio_) return false;
    double s0, g0;
    if (!phi_.exp_linear_form(&s0, &g0)) return false;
    *sc = s0;
    *g = g0 * *ratio_;
    return true;
  }

 private:
  WeightFunction phi_;
  MapFn s_;
  std::optional<double> ratio_;
};

class PowerOfModel final : public WeightModel {
 public:
  PowerOfModel(WeightFunction phi, double r) : phi_(std::move(phi)), r_(r) {
    params_ = {{"r", r}};
    hints_ = phi_.hints();
  }
  double value(double x) const override { return std::pow(phi_(x), r_); }
  double derivative(double x) const override {
    const double d = phi_.derivative(x);
    if (d == 0.0) return 0.0;
    return r_ * std::pow(phi_(x), r_ - 1.0) * d;
  }
  WeightFamily family() const override { return WeightFamily::power_of; }
  std::string descriptor() const override { return "(" + phi_.descriptor() + ")^" + format_real(r_); }
  bool exp_linear(double* sc, double* g) const override {
    double s0, g0;
    if (!phi_.exp_linear_form(&s0, &g0) || !(s0 > 0)) return false;
    *sc = std::pow(s0, r_);
    *g = g0 * r_;
    return true;
  }

 private:
  WeightFunction phi_;
  double r_;
};

class ProductModel final : public WeightModel {
 public:
  ProductModel(WeightFunction a, WeightFunction b) : a_(std::move(a)), b_(std::move(b)) {
    hints_ = a_.hints();
    hints_.insert(hints_.end(), b_.hints().begin(), b_.hints().end());
  }
  double value(double x) const override { return a_(x) * b_(x); }
  double derivative(double x) const override {
    return a_.derivative(x) * b_(x) + a_(x) * b_.derivative(x);
  }
  WeightFamily family() const override { return WeightFamily::product; }
  std::string descriptor() const override { return a_.descriptor() + "*" + b_.descriptor(); }
  bool exp_linear(double* sc, double* g) const override {
    double s1, g1, s2, g2;
    if (!a_.exp_linear_form(&s1, &g1) || !b_.exp_linear_form(&s2, &g2)) return false;
    *sc = s1 * s2;
    *g = g1 + g2;
    return true;
  }

 private:
  WeightFunction a_, b_;
};

class DerivedModel final : public WeightModel {
 public:
  DerivedModel(std::function<double(double)> v, std::function<double(double)> d, std::string name,
               std::vector<double> hints)
      : v_(std::move(v)), d_(std::move(d)), name_(std::move(name)) {
    hints_ = std::move(hints);
  }
  double value(double x) const override { return v_(x); }
  double derivative(double x) const override { return d_(x); }
  WeightFamily family() const override { return WeightFamily::derived; }
  std::string descriptor() const override { return name_; }

 private:
  std::function<double(double)> v_, d_;
  std::string name_;
};

}  // namespace

WeightFunction make_constant_weight(double v) {
  if (!std::isfinite(v)) throw InputError("constant weight must be finite");
  return WeightFunction(std::make_shared<ConstantModel>(v));
}

WeightFunction make_exp_weight(double gamma) {
  if (!std::isfinite(gamma)) throw InputError("exp weight rate must be finite");
  return WeightFunction(std::make_shared<ExpModel>(1.0, gamma));
}

WeightFunction make_power_weight(double c) {
  if (!std::isfinite(c)) throw InputError("power weight exponent must be finite");
  return WeightFunction(std::make_shared<PowerModel>(c));
}

WeightFunction make_abs_polynomial_weight(std::vector<double> coeffs) {
  if (coeffs.empty()) throw InputError("abs-polynomial weight needs at least one coefficient");
  return WeightFunction(std::make_shared<AbsPolyModel>(std::move(coeffs)));
}

WeightFunction make_density_polynomial_weight(const Density& f, std::vector<double> coeffs) {
  if (coeffs.empty()) throw InputError("density-polynomial weight needs at least one coefficient");
  return WeightFunction(std::make_shared<DensityPolyModel>(f, std::move(coeffs)));
}

WeightFunction make_density_power_weight(const Density& f, double k, double m) {
  return WeightFunction(std::make_shared<DensityPowerModel>(f, k, m));
}

WeightFunction compose_with_map(const WeightFunction& phi, const MapFn& s) {
  return WeightFunction(std::make_shared<ComposedModel>(phi, s, std::nullopt));
}

WeightFunction power_of(const WeightFunction& phi, double r) {
  if (!std::isfinite(r)) throw InputError("power-of exponent must be finite");
  if (phi.is_constant()) return make_constant_weight(std::pow(phi(0.0), r));
  return WeightFunction(std::make_shared<PowerOfModel>(phi, r));
}

WeightFunction product(const WeightFunction& a, const WeightFunction& b) {
  return WeightFunction(std::make_shared<ProductModel>(a, b));
}

WeightFunction make_derived_weight(std::function<double(double)> value,
                                   std::function<double(double)> derivative, std::string name,
                                   std::vector<double> hints) {
  return WeightFunction(
      std::make_shared<DerivedModel>(std::move(value), std::move(derivative), std::move(name), std::move(hints)));
}

WeightFunction derive_phi_star(const WeightFunction& phi, double sigma_f, double sigma_g) {
  if (!(sigma_f > 0) || !(sigma_g > 0) || !std::isfinite(sigma_f) || !std::isfinite(sigma_g))
    throw InputError("derive_phi_star: deviations must be finite and positive");
  const double ratio = sigma_f / sigma_g;
  if (phi.is_constant()) return phi;
  return WeightFunction(std::make_shared<ComposedModel>(phi, linear_map(ratio), ratio));
}

RhoPair derive_rho12(const WeightFunction& phi, double alpha, double p) {
  if (p == 1.0) throw InputError("derive_rho12: p = 1 has no rho weights (use the composed weight)");
  const double beta = holder_conjugate(alpha);
  const double e1 = alpha / (1.0 - p);
  const double e2 = p * beta / (p - 1.0);
  if (!std::isfinite(e1) || !std::isfinite(e2))
    throw InputError("derive_rho12: exponent is infinite for alpha=" + format_real(alpha));
  return {power_of(phi, e1), power_of(phi, e2), e1, e2};
}

WeightFunction derive_rho_s(const WeightFunction& phi, const MapFn& s, double p) {
  if (p == 1.0) throw InputError("derive_rho_s: p must differ from 1");
  if (phi.is_constant()) {
    if (!(phi(0.0) > 0)) throw DomainError("derive_rho_s: weight vanishes");
    return make_constant_weight(std::pow(phi(0.0), (1.0 - p) / (1.0 - p)));
  }
  auto value = [phi, s, p](double x) {
    const double num = phi(s.value(x));
    const double den = std::pow(phi(x), p);
    if (!(num > 0) || !(den > 0)) throw DomainError("derive_rho_s: weight vanishes on the support");
    return std::pow(num / den, 1.0 / (1.0 - p));
  };
  auto deriv = [phi, s, p, value](double x) {
    const double sx = s.value(x);
    const double term1 = s.derivative(x) * phi.derivative(sx) / ((1.0 - p) * phi(sx));
    const double term2 = p * phi.derivative(x) / ((p - 1.0) * phi(x));
    return value(x) * (term1 + term2);
  };
  return make_derived_weight(value, deriv, "rho_s(" + phi.descriptor() + "," + s.name + "," + format_real(p) + ")",
                             phi.hints());
}

Antiderivatives antiderivatives(const WeightFunction& phi) {
  Antiderivatives out;
  if (phi.model().psi(0.0)) {
    out.psi = [phi](double x) { return *phi.model().psi(x); };
  } else {
    out.psi = [phi](double x) {
      return num::integrate_value([&](double t) { return phi(t); }, {0.0, x}, phi.hints());
    };
  }
  const double phi0 = phi(0.0);
  if (std::isfinite(phi0)) {
    out.psi_bar = [phi, phi0](double x) { return phi(x) - phi0; };
  } else {
    out.psi_bar = [phi](double x) {
      return num::integrate_value([&](double t) { return phi.derivative(t); }, {0.0, x}, phi.hints());
    };
  }
  return out;
}

}  // namespace wrenyi
