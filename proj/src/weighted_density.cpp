#include "wrenyi/weighted_density.hpp"

#include <cmath>

#include "wrenyi/errors.hpp"

namespace wrenyi {

namespace {

std::vector<double> merged_hints(const Density& f, const WeightFunction& phi) {
  std::vector<double> h = f.hints();
  h.insert(h.end(), phi.hints().begin(), phi.hints().end());
  return h;
}

class WeightedModel final : public DensityModel {
 public:
  WeightedModel(Density base, WeightFunction phi, double chi)
      : base_(std::move(base)), phi_(std::move(phi)), chi_(chi) {
    params_ = {{"chi", chi}};
    hints_ = merged_hints(base_, phi_);
    warnings_ = base_.warnings();
  }
  double pdf(double x) const override {
    const double fx = base_.pdf(x);
    if (fx == 0.0) return 0.0;
    return phi_(x) * fx / chi_;
  }
  double derivative(double x) const override {
    const double fx = base_.pdf(x);
    if (fx == 0.0) return 0.0;
    return (phi_.derivative(x) * fx + phi_(x) * base_.derivative(x)) / chi_;
  }
  num::Interval support() const override { return base_.support(); }
  DensityFamily family() const override { return DensityFamily::weighted; }
  std::string descriptor() const override { return "weighted:" + base_.descriptor() + ";" + phi_.descriptor(); }

 private:
  Density base_;
  WeightFunction phi_;
  double chi_;
};

}  // namespace

Density make_weighted_density(const Density& f, const WeightFunction& phi) {
  double chi;
  double scale, gamma;
  if (f.family() == DensityFamily::exponential && phi.exp_linear_form(&scale, &gamma)) {
    const double lambda = f.param("lambda");
    chi = lambda > gamma ? scale * lambda / (lambda - gamma) : num::kInf;
  } else {
    num::QuadratureConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-11;
    const auto hints = merged_hints(f, phi);
    auto r = num::integrate(
        [&](double x) {
          const double fx = f.pdf(x);
          return fx == 0.0 ? 0.0 : phi(x) * fx;
        },
        f.support(), hints, cfg);
    chi = r.status == num::QuadStatus::divergent ? num::kInf : r.value;
  }
  if (!std::isfinite(chi) || chi == 0.0)
    throw DomainError("weighted density: E_f[phi] is zero or not finite");
  return Density(std::make_shared<WeightedModel>(f, phi, chi));
}

}  // namespace wrenyi
