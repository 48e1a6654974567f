#pragma once

#include <functional>
#include <span>

#include "wrenyi/quadrature.hpp"

namespace wrenyi::num {

using RealFn = std::function<double(double)>;

// Central difference with h = cbrt(eps) * max(1, |x|) and one Richardson
// step; switches to a one-sided stencil within h of a finite end of dom.
double differentiate(const RealFn& fn, double x, Interval dom = {});

// Brent's method on a sign-changing bracket [lo, hi]. Throws
// EvaluationError if fn(lo) and fn(hi) have the same sign.
double find_root(const RealFn& fn, double lo, double hi, double ftol = 1e-12);

// Root bracket search expanding outwards from [lo, hi] (at most 200 doublings).
double find_root_expanding(const RealFn& fn, double lo, double hi, Interval limit);

// Supremum of fn over dom (one-sided limits at finite ends included).
// Grid of 4097 points in a compactifying variable plus golden-section polish
// of the five best candidates. Throws DomainError when fn is unbounded.
double essential_supremum(const RealFn& fn, Interval dom, std::span<const double> hints = {});

// Total variation of fn on dom, with fn taken to be zero outside dom so jumps
// at finite ends count. Refined partition sums with polished local extrema.
double total_variation(const RealFn& fn, Interval dom, std::span<const double> hints = {});

}  // namespace wrenyi::num
