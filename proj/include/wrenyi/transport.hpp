#pragma once

#include "wrenyi/density.hpp"
#include "wrenyi/weight.hpp"

namespace wrenyi {

// Increasing map s with int_a^x f = int_{-k}^{s(x)} g, i.e. s = G^{-1} o F.
// Outside the support (a, b) of f the map is clamped to -k and k.
class TransportMap {
 public:
  TransportMap(Density source, Density target);

  double operator()(double x) const;
  // f(x) / g(s(x)); zero where g(s(x)) vanishes.
  double derivative(double x) const;
  MapFn as_map() const;

  const Density& source() const { return f_; }
  const Density& target() const { return g_; }
  double range_bound() const { return k_; }
  bool is_identity() const { return identity_; }
  // Largest |F_f(x) - F_g(s(x))| over 21 probes, and whether s was
  // increasing on 101 grid points. Filled by the constructor.
  double max_cdf_mismatch() const { return mismatch_; }
  bool increasing() const { return increasing_; }

 private:
  Density f_;
  Density g_;
  double k_;
  bool identity_ = false;
  double mismatch_ = 0.0;
  bool increasing_ = true;
};

// Throws DomainError when the target cdf cannot be inverted.
TransportMap build_transport(const Density& f, const Density& g);

// x with F_g(x) = u, using the survival function 1 - u = v in the upper half
// for accuracy. Bisection in log space.
double inverse_cdf(const Density& g, double u, double v);

}  // namespace wrenyi
