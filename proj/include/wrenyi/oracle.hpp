#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wrenyi/density.hpp"
#include "wrenyi/gaussian_forms.hpp"
#include "wrenyi/quadrature.hpp"
#include "wrenyi/weight.hpp"

// Brute-force reference engines. Slow on purpose; nothing here shares code
// with the adaptive quadrature.
namespace wrenyi::oracle {

struct OracleConfig {
  long grid = 2'000'000;  // midpoints over the clipped domain
  double clip = 1e-10;    // tail quantile (densities) or relative integrand level
  long draws = 1'000'000;
  std::uint64_t seed = 42;

  void validate() const;  // grid >= 1e3, draws >= 1e4
};

struct OracleValue {
  double value = 0.0;
  double error = 0.0;  // clipped-tail estimate (Riemann) or standard error (Monte Carlo)
};

// Midpoint sum. Infinite ends are cut where |fn| first drops below
// clip * (largest sample) on a doubling scan; the cut tail is estimated from
// the last doubling step and added to the error.
OracleValue riemann(const std::function<double(double)>& fn, num::Interval dom, const OracleConfig& cfg = {});
// Midpoint sum over the support of f clipped at its clip and 1 - clip
// quantiles. A cut moves further out (quantile times 1e-4) while the slice
// beyond it still carries more than 1e-9 of the bulk; the last slice goes
// into the error.
OracleValue riemann_density(const std::function<double(double)>& fn, const Density& f,
                            const OracleConfig& cfg = {});

// Inverse-cdf sampling with mt19937_64; u = ((r >> 11) + 1/2) 2^-53.
OracleValue mc_expectation(const std::function<double(double)>& fn, const AuxiliaryLaw& law,
                           const OracleConfig& cfg = {});

// A measure computed by both the library and the oracle.
struct MeasureRequest {
  std::string measure;  // expectation | power-integral | wre | wrp | we | moment | deviation | fisher | wfi
  Density f;
  WeightFunction phi;
  double p = 2.0;
  double alpha = 2.0;
};

struct CrossCheck {
  std::string name;
  double library = 0.0;
  double oracle = 0.0;
  double oracle_error = 0.0;
  double rel_diff = 0.0;
  bool pass = false;
  std::string error;  // set when either path failed
};

// Pass threshold: relative difference <= rel_tol (or absolute <= 1e-12 near zero).
CrossCheck cross_validate(const MeasureRequest& req, const OracleConfig& cfg = {}, double rel_tol = 1e-5);
CrossCheck compare(std::string name, double library, const OracleValue& oracle, double rel_tol = 1e-5);
// Monte-Carlo comparison passes within 3 standard errors.
CrossCheck compare_mc(std::string name, double library, const OracleValue& oracle);

struct SuiteIntegrand {
  std::string name;
  std::function<double(double)> fn;
  num::Interval dom;
  std::vector<double> hints;
  double exact;
};
// Twenty integrands with known values.
const std::vector<SuiteIntegrand>& integrand_suite();

}  // namespace wrenyi::oracle
