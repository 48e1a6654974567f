#include "wrenyi/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wrenyi/errors.hpp"

namespace wrenyi {

double inverse_cdf(const Density& g, double u, double v) {
  const num::Interval sup = g.support();
  if (!(u > 0.0)) return sup.lo;
  if (!(v > 0.0)) return sup.hi;
  const bool lower = u <= 0.5;
  const double lu = std::log(u), lv = std::log(v);
  // increasing in y; -inf below the support
  auto fn = [&](double y) {
    return lower ? std::log(g.cdf(y)) - lu : lv - std::log(g.sf(y));
  };
  double lo = std::isfinite(sup.lo) ? sup.lo : std::min(-1.0, sup.hi - 1.0);
  double hi = std::isfinite(sup.hi) ? sup.hi : std::max(1.0, sup.lo + 1.0);
  for (int i = 0; i < 2000 && fn(lo) > 0.0; ++i) {
    if (std::isfinite(sup.lo)) throw DomainError("inverse cdf: level below the support");
    lo = hi - 2.0 * (hi - lo);
  }
  for (int i = 0; i < 2000 && fn(hi) < 0.0; ++i) {
    if (std::isfinite(sup.hi)) break;  // the level is reached at the right end
    hi = lo + 2.0 * (hi - lo);
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("inverse cdf: no finite bracket");
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v_mid = fn(mid);
    if (std::isnan(v_mid)) throw DomainError("inverse cdf: cdf is not finite");
    (v_mid < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TransportMap::TransportMap(Density source, Density target)
    : f_(std::move(source)), g_(std::move(target)) {
  const auto gs = g_.support();
  k_ = std::max(std::abs(gs.lo), std::abs(gs.hi));
  identity_ = f_.descriptor() == g_.descriptor();
  if (identity_) return;

  const auto fs = f_.support();
  // probes at quantiles of f
  for (int i = 1; i <= 21; ++i) {
    const double u = i / 22.0;
    const double x = inverse_cdf(f_, u, 1.0 - u);
    const double y = (*this)(x);
    mismatch_ = std::max(mismatch_, std::abs(f_.cdf(x) - g_.cdf(y)));
  }
  double lo = fs.lo, hi = fs.hi;
  if (!std::isfinite(lo)) lo = inverse_cdf(f_, 1e-6, 1.0 - 1e-6);
  if (!std::isfinite(hi)) hi = inverse_cdf(f_, 1.0 - 1e-6, 1e-6);
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 100; ++i) {
    const double y = (*this)(lo + (hi - lo) * i / 100.0);
    if (y < prev) increasing_ = false;
    prev = y;
  }
}

double TransportMap::operator()(double x) const {
  if (identity_) return x;
  const auto fs = f_.support();
  if (x <= fs.lo) return -k_;
  if (x >= fs.hi) return k_;
  return inverse_cdf(g_, f_.cdf(x), f_.sf(x));
}

double TransportMap::derivative(double x) const {
  if (identity_) return 1.0;
  const double gy = g_.pdf((*this)(x));
  if (!(gy > 0.0)) return 0.0;
  return f_.pdf(x) / gy;
}

MapFn TransportMap::as_map() const {
  const TransportMap self = *this;
  return {[self](double x) { return self(x); }, [self](double x) { return self.derivative(x); },
          "transport:" + g_.descriptor()};
}

TransportMap build_transport(const Density& f, const Density& g) { return TransportMap(f, g); }

}  // namespace wrenyi
