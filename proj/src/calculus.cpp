#include "wrenyi/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "wrenyi/errors.hpp"

namespace wrenyi::num {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInvPhi = 0.6180339887498948482;

// Maps u in [0, 1] onto dom; finite ends are nudged inwards so that a
// function defined on the open interval is never evaluated at its boundary.
struct Compactifier {
  Interval dom;

  double nudge(double a) const { return 1e-12 * std::max(1.0, std::abs(a)); }

  double operator()(double u) const {
    const bool flo = std::isfinite(dom.lo), fhi = std::isfinite(dom.hi);
    if (flo && fhi) {
      const double lo = dom.lo + nudge(dom.lo) * (dom.hi - dom.lo > 1e-6 ? 1.0 : 0.0);
      const double hi = dom.hi - nudge(dom.hi) * (dom.hi - dom.lo > 1e-6 ? 1.0 : 0.0);
      return lo + (hi - lo) * u;
    }
    if (flo) {
      const double lo = dom.lo + nudge(dom.lo);
      return lo + u / (1.0 - u);
    }
    if (fhi) {
      const double hi = dom.hi - nudge(dom.hi);
      return hi - (1.0 - u) / u;
    }
    return std::tan(std::numbers::pi * (u - 0.5));
  }

  double inverse(double x) const {
    const bool flo = std::isfinite(dom.lo), fhi = std::isfinite(dom.hi);
    if (flo && fhi) return (x - dom.lo) / (dom.hi - dom.lo);
    if (flo) {
      const double d = x - dom.lo;
      return d / (1.0 + d);
    }
    if (fhi) {
      const double d = dom.hi - x;
      return 1.0 / (1.0 + d);
    }
    return std::atan(x) / std::numbers::pi + 0.5;
  }

  // Open ends are excluded from the grid (u = 0 or 1 would map to infinity).
  std::vector<double> grid(int n) const {
    std::vector<double> us;
    us.reserve(n);
    const bool flo = std::isfinite(dom.lo), fhi = std::isfinite(dom.hi);
    for (int i = 0; i < n; ++i) {
      const double u = static_cast<double>(i) / (n - 1);
      if ((i == 0 && !flo) || (i == n - 1 && !fhi)) continue;
      us.push_back(u);
    }
    return us;
  }
};

double golden_max(const std::function<double(double)>& g, double a, double b, double* arg) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = g(c), fd = g(d);
  for (int it = 0; it < 80 && std::abs(b - a) > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = g(d);
    }
  }
  if (fc > fd) {
    if (arg) *arg = c;
    return fc;
  }
  if (arg) *arg = d;
  return fd;
}

std::vector<double> with_hints(std::vector<double> us, const Compactifier& cmp,
                               std::span<const double> hints) {
  for (double h : hints) {
    if (!(h > cmp.dom.lo && h < cmp.dom.hi)) continue;
    const double u = cmp.inverse(h);
    const double du = 1e-10;
    for (double v : {u - du, u, u + du})
      if (v > 0.0 && v < 1.0) us.push_back(v);
  }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  return us;
}

}  // namespace

double differentiate(const RealFn& fn, double x, Interval dom) {
  const double h = std::cbrt(kEps) * std::max(1.0, std::abs(x));
  if (x - h >= dom.lo && x + h <= dom.hi) {
    auto d = [&](double s) { return (fn(x + s) - fn(x - s)) / (2.0 * s); };
    const double d1 = d(h), d2 = d(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
  }
  const double dir = (x - h < dom.lo) ? 1.0 : -1.0;
  if (x + dir * 2.0 * h < dom.lo || x + dir * 2.0 * h > dom.hi)
    throw InputError("differentiate: support too narrow for a one-sided stencil");
  auto d = [&](double s) {
    return dir * (-3.0 * fn(x) + 4.0 * fn(x + dir * s) - fn(x + dir * 2.0 * s)) / (2.0 * s);
  };
  const double d1 = d(h), d2 = d(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

double find_root(const RealFn& fn, double lo, double hi, double ftol) {
  double a = lo, b = hi;
  double fa = fn(a), fb = fn(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::signbit(fa) == std::signbit(fb))
    throw EvaluationError("find_root: bracket has no sign change");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < 300; ++it) {
    if (std::signbit(fb) == std::signbit(fc)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double scale = std::max(1.0, std::abs(b));
    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5e-14 * scale;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || std::abs(fb) <= ftol) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double m1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double m2 = std::abs(e * q);
      if (2.0 * p < std::min(m1, m2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = fn(b);
  }
  return b;
}

double find_root_expanding(const RealFn& fn, double lo, double hi, Interval limit) {
  double flo = fn(lo), fhi = fn(hi);
  for (int i = 0; i < 200 && std::signbit(flo) == std::signbit(fhi); ++i) {
    const double w = hi - lo;
    lo = std::max(limit.lo, lo - w);
    hi = std::min(limit.hi, hi + w);
    flo = fn(lo);
    fhi = fn(hi);
  }
  return find_root(fn, lo, hi);
}

double essential_supremum(const RealFn& fn, Interval dom, std::span<const double> hints) {
  const Compactifier cmp{dom};
  auto g = [&](double u) { return fn(cmp(u)); };

  auto scan = [&](int n, double* best_u) {
    auto us = with_hints(cmp.grid(n), cmp, hints);
    std::vector<double> vals(us.size());
    for (size_t i = 0; i < us.size(); ++i) {
      vals[i] = g(us[i]);
      if (std::isinf(vals[i]) && vals[i] > 0)
        throw DomainError("essential_supremum: function is unbounded");
      if (std::isnan(vals[i])) vals[i] = -std::numeric_limits<double>::infinity();
    }
    std::vector<size_t> idx(us.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return vals[a] > vals[b]; });
    double best = vals[idx[0]];
    *best_u = us[idx[0]];
    std::vector<size_t> picked;
    for (size_t k = 0; k < idx.size() && picked.size() < 5; ++k) {
      const size_t i = idx[k];
      bool near = false;
      for (size_t j : picked) near |= (i + 1 >= j && i <= j + 1);
      if (near) continue;
      picked.push_back(i);
      const double a = us[i == 0 ? 0 : i - 1];
      const double b = us[std::min(i + 1, us.size() - 1)];
      if (b <= a) continue;
      double arg = us[i];
      const double v = golden_max(g, a, b, &arg);
      if (v > best) {
        best = v;
        *best_u = arg;
      }
    }
    return best;
  };

  double u1 = 0, u2 = 0, u3 = 0;
  const double m1 = scan(4097, &u1);
  const double m2 = scan(8193, &u2);
  const double m3 = scan(16385, &u3);
  // Unbounded: the maximum keeps climbing as the grid approaches an end.
  const bool at_edge = (u3 < 1e-3 || u3 > 1.0 - 1e-3);
  if (at_edge && m3 > m2 * (1.0 + 1e-2) + 1e-300 && m2 > m1 * (1.0 + 1e-2) + 1e-300)
    throw DomainError("essential_supremum: function grows without bound");
  return std::max({m1, m2, m3});
}

double total_variation(const RealFn& fn, Interval dom, std::span<const double> hints) {
  const Compactifier cmp{dom};
  auto g = [&](double u) { return fn(cmp(u)); };

  auto partition_sum = [&](int n) {
    auto us = with_hints(cmp.grid(n), cmp, hints);
    std::vector<double> v(us.size());
    for (size_t i = 0; i < us.size(); ++i) {
      v[i] = g(us[i]);
      if (!std::isfinite(v[i])) throw DomainError("total_variation: function not finite");
    }
    // Function is zero outside dom: the ends contribute their one-sided values
    // (for infinite ends this is the residual variation to the limit 0).
    double tv = std::abs(v.front()) + std::abs(v.back());
    for (size_t i = 1; i + 1 < v.size(); ++i) {
      const double dl = v[i] - v[i - 1], dr = v[i + 1] - v[i];
      const bool peak = dl > 0 && dr < 0, trough = dl < 0 && dr > 0;
      if (peak || trough) {
        const double s = peak ? 1.0 : -1.0;
        const double ext = s * golden_max([&](double u) { return s * g(u); }, us[i - 1], us[i + 1], nullptr);
        if ((peak && ext > v[i]) || (trough && ext < v[i])) {
          // The polished extremum adds 2|ext - v[i]| to the sum.
          tv += 2.0 * std::abs(ext - v[i]);
        }
      }
    }
    for (size_t i = 1; i < v.size(); ++i) tv += std::abs(v[i] - v[i - 1]);
    return tv;
  };
  return partition_sum(32769);
}

}  // namespace wrenyi::num
