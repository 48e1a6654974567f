#include "wrenyi/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "wrenyi/errors.hpp"

namespace wrenyi::num {

std::string to_string(QuadStatus s) {
  switch (s) {
    case QuadStatus::converged: return "converged";
    case QuadStatus::tolerance_not_met: return "tolerance-not-met";
    case QuadStatus::divergent: return "divergent";
  }
  return "unknown";
}

bool Interval::finite() const { return std::isfinite(lo) && std::isfinite(hi); }

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
  double u0, u1;  // sub-range of the smoothed variable in [0, 1]
  double value, error;
  int piece;
  int depth;
  bool operator<(const Segment& o) const { return error < o.error; }
};

struct Piece {
  double a, b;
};

// x = a + (b - a) * u^2 (3 - 2u); the Jacobian vanishes at both ends, which
// tames algebraic and logarithmic endpoint singularities.
struct SmoothedPiece {
  const Integrand& fn;
  Piece p;
  long& evals;
  bool bad = false;

  double operator()(double u) {
    const double w = p.b - p.a;
    const double x = p.a + w * u * u * (3.0 - 2.0 * u);
    if (!(x > p.a && x < p.b)) return 0.0;
    const double jac = 6.0 * w * u * (1.0 - u);
    ++evals;
    const double v = fn(x);
    if (!std::isfinite(v)) {
      bad = true;
      return 0.0;
    }
    return v * jac;
  }
};

Segment gk15(SmoothedPiece& g, double u0, double u1, int piece, int depth) {
  const double c = 0.5 * (u0 + u1);
  const double h = 0.5 * (u1 - u0);
  const double fc = g(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    f1[j] = g(c - dx);
    f2[j] = g(c + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  resk *= h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  double err = std::abs((resk - resg * h));
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(err, 50.0 * kEps * resabs);
  return Segment{u0, u1, resk, err, piece, depth};
}

struct TailResult {
  double value = 0.0;
  double error = 0.0;
  bool divergent = false;
  bool converged = false;
  long evals = 0;
};

// Exp-sinh rule for the integral of fn(a + sign * e^{pi/2 sinh t}) over t in R.
TailResult exp_sinh_tail(const Integrand& fn, double a, double sign,
                         const QuadratureConfig& cfg) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  constexpr double kTMax = 6.75;
  TailResult out;
  auto term = [&](double t) -> double {
    const double e = std::exp(kHalfPi * std::sinh(t));
    const double x = a + sign * e;
    if (x == a || !std::isfinite(x)) return 0.0;
    ++out.evals;
    const double v = fn(x);
    if (!std::isfinite(v)) {
      // inf * 0 in a naive integrand this far out is underflow; a genuinely
      // slow tail is caught by the x * f(x) check below
      if (std::abs(x - a) > 1e100) return 0.0;
      out.divergent = true;
      return 0.0;
    }
    return v * kHalfPi * std::cosh(t) * e;
  };

  double h = 1.0;
  double sum = 0.0;
  double edge = 0.0;  // contribution of the outermost right nodes
  const int n0 = static_cast<int>(std::floor(kTMax / h));
  for (int j = -n0; j <= n0; ++j) {
    const double v = term(j * h);
    sum += v;
    if (std::abs(j) >= n0 - 1) edge += std::abs(v);
  }
  double prev = sum * h;
  double est = prev;
  for (int level = 1; level <= cfg.max_de_level; ++level) {
    h *= 0.5;
    const int n = static_cast<int>(std::floor(kTMax / h));
    double add = 0.0;
    edge = 0.0;
    for (int j = -n; j <= n; ++j) {
      if ((j & 1) == 0) continue;
      const double v = term(j * h);
      add += v;
      if (std::abs(j) >= n - 3) edge += std::abs(v);
    }
    sum += add;
    est = sum * h;
    if (out.divergent) break;
    const double diff = std::abs(est - prev);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(est));
    prev = est;
    if (level >= 3 && diff <= 0.1 * tol) {
      out.converged = true;
      out.error = diff;
      break;
    }
    out.error = diff;
  }
  if (!out.converged) {
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(est));
    out.converged = out.error <= tol;
  }
  // Mass still arriving at the truncation edge means the tail does not decay.
  if (edge * h > std::max(1e-6 * std::abs(est), cfg.abs_tol)) out.divergent = true;
  // Slow power tails (|f| ~ x^-q, q <= 1) underflow before the last nodes, so
  // also check that x*f(x) is still shrinking far out.
  const double scale = 1.0 + std::abs(a);
  const double x1 = a + sign * scale * 1e8, x2 = a + sign * scale * 1e16;
  const double r1 = std::abs(x1 * fn(x1)), r2 = std::abs(x2 * fn(x2));
  out.evals += 2;
  if (!std::isfinite(r1) || !std::isfinite(r2) ||
      (r2 >= 0.5 * r1 && r2 > 1e-30))
    out.divergent = true;
  out.value = sign * est;
  return out;
}

}  // namespace

IntegralResult integrate(const Integrand& fn, Interval dom,
                         std::span<const double> hints,
                         const QuadratureConfig& cfg) {
  IntegralResult res;
  if (std::isnan(dom.lo) || std::isnan(dom.hi))
    throw InputError("integration bounds must not be NaN");
  if (dom.lo == dom.hi) return res;
  double sign = 1.0;
  if (dom.lo > dom.hi) {
    std::swap(dom.lo, dom.hi);
    sign = -1.0;
  }

  std::vector<double> cuts;
  if (std::isfinite(dom.lo)) cuts.push_back(dom.lo);
  for (double h : hints)
    if (std::isfinite(h) && h > dom.lo && h < dom.hi) cuts.push_back(h);
  if (std::isfinite(dom.hi)) cuts.push_back(dom.hi);
  if (cuts.empty()) cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  bool divergent = false;
  bool all_converged = true;
  double tail_value = 0.0, tail_error = 0.0;
  if (!std::isfinite(dom.lo)) {
    auto t = exp_sinh_tail(fn, cuts.front(), -1.0, cfg);
    // The substitution runs from -inf to the cut: orientation flips sign.
    tail_value += -t.value;
    tail_error += t.error;
    res.evaluations += t.evals;
    divergent |= t.divergent;
    all_converged &= t.converged;
  }
  if (!std::isfinite(dom.hi)) {
    auto t = exp_sinh_tail(fn, cuts.back(), 1.0, cfg);
    tail_value += t.value;
    tail_error += t.error;
    res.evaluations += t.evals;
    divergent |= t.divergent;
    all_converged &= t.converged;
  }

  std::vector<Piece> pieces;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) pieces.push_back({cuts[i], cuts[i + 1]});

  std::priority_queue<Segment> heap;
  std::vector<Segment> frozen;  // segments at the depth limit
  double total = 0.0, total_err = 0.0;
  std::vector<SmoothedPiece> smoothers;
  smoothers.reserve(pieces.size());
  for (const auto& p : pieces) smoothers.push_back(SmoothedPiece{fn, p, res.evaluations});
  for (size_t i = 0; i < pieces.size(); ++i) {
    Segment s = gk15(smoothers[i], 0.0, 1.0, static_cast<int>(i), 0);
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }
  int intervals = static_cast<int>(pieces.size());
  auto target = [&] {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total + tail_value));
  };
  while (!heap.empty() && total_err + tail_error > target() &&
         intervals < cfg.max_intervals) {
    Segment s = heap.top();
    heap.pop();
    if (s.depth >= cfg.max_depth) {
      frozen.push_back(s);
      continue;
    }
    const double mid = 0.5 * (s.u0 + s.u1);
    Segment l = gk15(smoothers[s.piece], s.u0, mid, s.piece, s.depth + 1);
    Segment r = gk15(smoothers[s.piece], mid, s.u1, s.piece, s.depth + 1);
    total += l.value + r.value - s.value;
    total_err += l.error + r.error - s.error;
    heap.push(l);
    heap.push(r);
    ++intervals;
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  for (const auto& s : frozen) {
    total += s.value;
    total_err += s.error;
  }
  for (const auto& sm : smoothers) divergent |= sm.bad;

  res.value = sign * (total + tail_value);
  res.error = total_err + tail_error;
  const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(res.value));
  if (divergent || !std::isfinite(res.value))
    res.status = QuadStatus::divergent;
  else if (res.error > tol || !all_converged)
    res.status = QuadStatus::tolerance_not_met;
  else
    res.status = QuadStatus::converged;
  return res;
}

double integrate_value(const Integrand& fn, Interval dom, std::span<const double> hints,
                       const QuadratureConfig& cfg) {
  auto r = integrate(fn, dom, hints, cfg);
  if (r.status == QuadStatus::divergent)
    throw DomainError("integral diverges or integrand is not finite");
  return r.value;
}

}  // namespace wrenyi::num
