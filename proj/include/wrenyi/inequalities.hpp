#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wrenyi/density.hpp"
#include "wrenyi/measures.hpp"
#include "wrenyi/transport.hpp"
#include "wrenyi/weight.hpp"

namespace wrenyi {

enum class Verdict { holds, violated, assumptions_unmet, inconclusive };
std::string to_string(Verdict v);

// Every inequality is stored as lhs <= rhs; slack = rhs - lhs.
struct InequalityVerdict {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double error = 0.0;  // propagated quadrature error of the slack
  double tolerance = 0.0;
  std::vector<Flag> margins;
  Verdict verdict = Verdict::holds;
  bool equality = false;  // |slack| within tolerance
  std::vector<std::pair<std::string, double>> terms;
  std::vector<std::string> notes;

  double term(std::string_view name) const;
};

struct VerdictOptions {
  // Relative: the absolute tolerance is tol * (1 + |lhs| + |rhs|).
  double tol = 1e-7;
  MeasureOptions measure{};
};

// Verdict rules: any margin below -tol (or a strict margin <= 0) gives
// assumptions-unmet; otherwise slack >= -tol_abs beyond the error bound (or
// within tol_abs of zero) holds, |slack| <= error is inconclusive, the rest
// is violated.
InequalityVerdict make_verdict(std::string id, double lhs, double rhs, double error, std::vector<Flag> margins,
                               double tol);

// D_{phi,p}(f||g) >= 0; at p = 1 with the margin E_f[phi] - E_g[phi].
InequalityVerdict check_relative_renyi(const Density& f, const Density& g, const WeightFunction& phi, double p,
                                       const VerdictOptions& opt = {});

struct MeiTerms {
  double t_phi = 0.0;  // sigma(f) / sigma(G)
  WeightFunction phi_star;
  double lhs = 0.0;
  double rhs = 0.0;
};
MeiTerms mei_terms(const Density& f, const WeightFunction& phi, double alpha, double p,
                   const MeasureOptions& opt = {});

// N_phi(f)/sigma(f) <= N_phi(G)^p N_{phi*}(G)^{1-p} / sigma(G), G = G_{alpha,p}.
InequalityVerdict check_mei(const Density& f, const WeightFunction& phi, double alpha, double p,
                            const VerdictOptions& opt = {});

struct ScalingResidual {
  double lhs = 0.0;  // int phi G_t^p
  double rhs = 0.0;  // t^{1-p} int phi(t x) G^p(x) dx
  double residual = 0.0;  // |lhs - rhs| / |lhs| (absolute when lhs = 0)
};
ScalingResidual check_scaling_identity(const WeightFunction& phi, double alpha, double p, double t,
                                       const MeasureOptions& opt = {});

struct CorollaryTerms {
  double t_c = 0.0;
  double c_alpha = 0.0;
  double m_c = 0.0;
  double w_g = 0.0;
  double a_s = 0.0;
  double b_s = 0.0;
};

// phi = |x|^c. Entry 0: sigma_{c+alpha}(G)^{C}/N(G) <= sigma_{c+alpha}(f)^{C}/N(f)
// with C = (c+1)(c+alpha)/alpha, alpha in (0, inf). Entry 1: the Laplace
// bound (c+1)! N_{|x|^c,1}(f) / (2 e^{c+1}) <= E_f|X|^{c+1}.
std::vector<InequalityVerdict> check_cor1(const Density& f, double c, double alpha, double p,
                                          const VerdictOptions& opt = {});
double cor1_constant(double c, double alpha);  // C_alpha
// m(c) (E_f|X|^{c+1})^{c-1} <= int |x|^c f^2, c > -2.
InequalityVerdict check_cor2(const Density& f, double c, const VerdictOptions& opt = {});
double cor2_constant(double c);  // m(c)
// (int x^2 f^2)^{-1} <= 2 w(G) (int x^4 f)^{3/2} with G = G_{2,2}.
InequalityVerdict check_cor3(const Density& f, const VerdictOptions& opt = {});
double cor3_constant(const MeasureOptions& opt = {});  // w(G)

struct FiiTerms {
  WeightFunction rho1;
  WeightFunction rho2;
  WeightFunction rho_s;
  WeightFunction phi_tilde;
  double eta = 0.0;
  double kappa = 0.0;
  double delta = 0.0;         // alpha = inf only
  double lambda_ratio = 1.0;  // Lambda(Y) / Lambda(Z) of rho1; 1 when unused
  double psi_bar_difference = 0.0;
};
// eta needs p != 1; at p = 1 eta, kappa are left at zero.
FiiTerms fii_terms(const Density& f, const WeightFunction& phi, double alpha, double p,
                   const MeasureOptions& opt = {});
FiiTerms fii_terms(const TransportMap& s, const WeightFunction& phi, double alpha, double p,
                   const MeasureOptions& opt = {});

// Weighted Fisher information inequality against G = G_{alpha,p}, with the
// transport map from f onto G. alpha in [1, inf) with p > 1/(1+alpha), or
// alpha = inf with p != 1.
InequalityVerdict check_fii(const Density& f, const WeightFunction& phi, double alpha, double p,
                            const VerdictOptions& opt = {});
// Cramer-Rao form: same right side as check_fii, deviation-based left side.
InequalityVerdict check_cri(const Density& f, const WeightFunction& phi, double alpha, double p,
                            const VerdictOptions& opt = {});
// N_{phi*}(G) N_{rho1}(G) / (N_phi(G) N_phi(f)).
double cri_varpi(const Density& f, const WeightFunction& phi, double alpha, double p,
                 const MeasureOptions& opt = {});

// Laplace-target transport bounds. The power form needs c > -1, the
// exponential form |c| < 1/2 (InputError otherwise).
InequalityVerdict check_cor4_power(const Density& f, double c, const VerdictOptions& opt = {});
InequalityVerdict check_cor4_exponential(const Density& f, double c, const VerdictOptions& opt = {});
// Both forms where c allows; the exponential form is skipped for |c| >= 1/2.
std::vector<InequalityVerdict> check_cor4(const Density& f, double c, const VerdictOptions& opt = {});

struct PartsResidual {
  double int_f_dg = 0.0;  // int f g'
  double int_df_g = 0.0;  // int f' g
  double residual = 0.0;  // |int f g' + int f' g| / (1 + |int f g'|)
  double boundary = 0.0;  // max |f| at the ends (limits at infinity)
  bool boundary_ok = true;
};
// Integration by parts with vanishing boundary terms. f and g carry their
// derivatives.
PartsResidual lemma4_residual(const MapFn& f, const MapFn& g, num::Interval dom, std::vector<double> hints = {},
                              const num::QuadratureConfig& cfg = {});

}  // namespace wrenyi
