#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wrenyi/quadrature.hpp"

namespace wrenyi {

enum class DensityFamily { exponential, laplace, tent, generalized_gaussian, scaled, weighted, tabulated, perturbed };

std::string to_string(DensityFamily f);

using ParamList = std::vector<std::pair<std::string, double>>;

// Behaviour behind a Density handle. Implementations are immutable.
class DensityModel {
 public:
  virtual ~DensityModel() = default;

  virtual double pdf(double x) const = 0;
  // Default: numerical derivative of pdf.
  virtual double derivative(double x) const;
  // Default: quadrature of pdf from the left end of the support.
  virtual double cdf(double x) const;
  // Default: quadrature of pdf up to the right end of the support.
  virtual double sf(double x) const;
  virtual bool analytic_cdf() const { return false; }

  virtual num::Interval support() const = 0;
  virtual DensityFamily family() const = 0;
  virtual std::string descriptor() const = 0;

  const std::vector<double>& hints() const { return hints_; }
  const ParamList& params() const { return params_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 protected:
  std::vector<double> hints_;
  ParamList params_;
  std::vector<std::string> warnings_;
};

// Immutable, cheaply copyable handle to a univariate probability density.
class Density {
 public:
  explicit Density(std::shared_ptr<const DensityModel> model);

  double pdf(double x) const { return m_->pdf(x); }
  double operator()(double x) const { return m_->pdf(x); }
  double derivative(double x) const { return m_->derivative(x); }
  double cdf(double x) const;
  double sf(double x) const;
  bool analytic_cdf() const { return m_->analytic_cdf(); }

  num::Interval support() const { return m_->support(); }
  const std::vector<double>& hints() const { return m_->hints(); }
  DensityFamily family() const { return m_->family(); }
  std::string descriptor() const { return m_->descriptor(); }
  const ParamList& params() const { return m_->params(); }
  // Throws InputError when the parameter is absent.
  double param(std::string_view name) const;
  bool has_param(std::string_view name) const;
  const std::vector<std::string>& warnings() const { return m_->warnings(); }

  const DensityModel& model() const { return *m_; }

 private:
  std::shared_ptr<const DensityModel> m_;
};

// lambda * exp(-lambda x) on [0, inf).
Density make_exponential(double lambda);
// exp(-|x|/b) / (2b).
Density make_laplace(double b = 1.0);
// (1 - |x|)_+.
Density make_tent();
// Generalized p-Gaussian G_{alpha,p}(x/t)/t; alpha may be 0 (with p > 1) or
// infinity (the uniform density on [-t, t]).
Density make_generalized_gaussian(double alpha, double p, double t = 1.0);
// Uniform on [-1, 1] (the alpha = infinity member of the family).
Density make_uniform();
// f(x/s)/s.
Density scale_density(const Density& f, double s);
// f(x) (1 + eps cos(omega x)) / Z with Z computed by quadrature; |eps| < 1.
Density make_cosine_perturbation(const Density& f, double eps, double omega);
// Piecewise-linear interpolation of (xs, ys), renormalized to unit mass.
Density make_tabulated(std::vector<double> xs, std::vector<double> ys, std::string source = "inline");
// Two-column CSV (x, unnormalized pdf); a non-numeric first line is a header.
Density load_table(const std::string& path);

// Normalizing constant a_{alpha,p} of the generalized Gaussian.
double generalized_gaussian_constant(double alpha, double p);
// Whether (alpha, p) defines a generalized Gaussian density.
bool generalized_gaussian_valid(double alpha, double p);

// Shortest round-trip text for a real ("inf" for infinity).
std::string format_real(double v);

}  // namespace wrenyi
