#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wrenyi/measures.hpp"
#include "wrenyi/quadrature.hpp"
#include "wrenyi/weight.hpp"

namespace wrenyi {

// Which closed-form branch of the generalized Gaussian applies.
enum class GaussianCase { p_above_one, p_below_one, p_one, alpha_zero, alpha_infinite };

std::string to_string(GaussianCase c);
// Throws InputError when (alpha, p) is outside every branch.
GaussianCase classify_gaussian(double alpha, double p);

// Beta(shape1, shape2) or Gamma(shape1, rate 1).
struct AuxiliaryLaw {
  enum class Kind { beta, gamma } kind = Kind::beta;
  double shape1 = 1.0;
  double shape2 = 1.0;

  static AuxiliaryLaw beta(double a, double b);
  static AuxiliaryLaw gamma(double k);

  double pdf(double z) const;
  double mean() const;
  // Inverse CDF.
  double quantile(double u) const;
  std::string describe() const;
};

// E[h(Z)] by quadrature against the law's pdf. h receives z and 1 - z so
// that Beta expectations keep precision next to 1.
double expect(const AuxiliaryLaw& law, const std::function<double(double z, double one_minus_z)>& h,
              const num::QuadratureConfig& cfg = {});

// E[phi(-r) + phi(r)] with r = ((1 - Z)/(p - 1))^{1/alpha}.
double lambda_tilde(const WeightFunction& phi, double p, double alpha, const AuxiliaryLaw& law);
// E[phi(-r) + phi(r)] with r = ((1 - Z)/(Z (1 - p)))^{1/alpha}.
double lambda_bar(const WeightFunction& phi, double p, double alpha, const AuxiliaryLaw& law);
// E[phi(-Z^{1/alpha}) + phi(Z^{1/alpha})].
double theta(const WeightFunction& phi, double alpha, const AuxiliaryLaw& law);
// E[phi(-e^{-Z}) + phi(e^{-Z})].
double upsilon(const WeightFunction& phi, const AuxiliaryLaw& law);

// Laws used by each branch. For p > 1 the first law is the one that makes
// the power formula agree with int phi G^p: Beta((2p-1)/(p-1), 1/alpha).
struct GaussianLaws {
  AuxiliaryLaw entropy_law;    // Z, Zbar, W-bar (p = 1 uses W-bar for E_G[phi]), X
  AuxiliaryLaw deviation_law;  // Y, Ybar, W, X-tilde
  AuxiliaryLaw extra_law;      // alpha = 0 only: X-bar
};
GaussianLaws gaussian_laws(double alpha, double p);

// Semi-closed-form measures of the generalized Gaussian G_{alpha,p}.
struct GaussianMeasureSet {
  GaussianCase tag = GaussianCase::p_above_one;
  double power = 0.0;        // N^w_{phi,p}(G)
  double deviation = 0.0;    // sigma_{phi,alpha}(G)
  double fisher = 0.0;       // J^{w,phi}_{alpha,p}(G); valid when has_fisher
  bool has_fisher = false;
  double expectation = 0.0;  // E_G[phi]
  // Auxiliary expectations and diagnostics, by name.
  std::vector<std::pair<std::string, double>> parts;
  std::vector<std::string> notes;

  double part(const std::string& name) const;
};

GaussianMeasureSet gaussian_measures(const WeightFunction& phi, double alpha, double p);

// Identity between power, deviation and Fisher information of G.
enum class GaussianIdentity { p_above_one, p_below_one, p_one, uniform };
std::string to_string(GaussianIdentity id);
GaussianIdentity identity_for(GaussianCase c);

struct IdentityResidual {
  GaussianIdentity id = GaussianIdentity::p_above_one;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs| / (1 + |lhs|)
  std::vector<std::pair<std::string, double>> parts;
};

// The left side is computed by direct quadrature on the density G, the
// right side from the semi-closed forms and auxiliary expectations.
IdentityResidual verify_identity(GaussianIdentity id, const WeightFunction& phi, double alpha, double p,
                                 const MeasureOptions& opt = {});

}  // namespace wrenyi
