#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>

#include "wrenyi/density.hpp"
#include "wrenyi/errors.hpp"
#include "wrenyi/quadrature.hpp"
#include "wrenyi/weight.hpp"
#include "wrenyi/weighted_density.hpp"

using namespace wrenyi;

namespace {
double mass(const Density& f) {
  num::QuadratureConfig cfg;
  cfg.abs_tol = 1e-12;
  cfg.rel_tol = 1e-11;
  return num::integrate([&](double x) { return f(x); }, f.support(), f.hints(), cfg).value;
}
}  // namespace

TEST_CASE("generalized Gaussian constants") {
  CHECK(generalized_gaussian_constant(2, 1) == doctest::Approx(1 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(generalized_gaussian_constant(1, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(generalized_gaussian_constant(2, 2) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(generalized_gaussian_constant(num::kInf, 0.3) == 0.5);
  CHECK_THROWS_AS(make_generalized_gaussian(0.5, 0.4), InputError);
  CHECK_THROWS_AS(make_generalized_gaussian(0, 1), InputError);
  CHECK_THROWS_AS(make_generalized_gaussian(2, 2, -1), InputError);
}

TEST_CASE("generalized Gaussian pdf shapes") {
  const auto g = make_generalized_gaussian(2, 2);
  for (double x : {-0.9, -0.3, 0.0, 0.5}) CHECK(g(x) == doctest::Approx(0.75 * (1 - x * x)).epsilon(1e-14));
  CHECK(g(1.2) == 0.0);
  const auto tent = make_generalized_gaussian(1, 2);
  CHECK(tent(0.25) == doctest::Approx(0.75).epsilon(1e-14));
  const auto gauss = make_generalized_gaussian(2, 1);
  CHECK(gauss(1.0) == doctest::Approx(std::exp(-1.0) / std::sqrt(std::numbers::pi)).epsilon(1e-14));
  const auto u = make_uniform();
  CHECK(u(0.99) == 0.5);
  CHECK(u(1.01) == 0.0);
}

TEST_CASE("every catalog density has unit mass") {
  const double inf = num::kInf;
  for (double alpha : {0.5, 1.0, 2.0, 3.0, inf})
    for (double p : {0.8, 1.0, 1.5, 2.0, 3.0}) {
      if (!generalized_gaussian_valid(alpha, p)) continue;
      CAPTURE(alpha);
      CAPTURE(p);
      CHECK(std::abs(mass(make_generalized_gaussian(alpha, p)) - 1.0) < 1e-8);
    }
  for (double p : {1.5, 2.0, 3.0}) {
    CAPTURE(p);
    CHECK(std::abs(mass(make_generalized_gaussian(0, p)) - 1.0) < 1e-8);
  }
  for (const auto& f : {make_exponential(0.3), make_laplace(2), make_tent()}) CHECK(std::abs(mass(f) - 1.0) < 1e-10);
}

TEST_CASE("truncation outside the support for p > 1") {
  for (double alpha : {0.5, 1.0, 2.0, 3.0})
    for (double p : {1.5, 2.0, 3.0}) {
      const auto g = make_generalized_gaussian(alpha, p);
      const double r = g.support().hi;
      CHECK(r == doctest::Approx(std::pow(p - 1, -1 / alpha)));
      for (double x : {r * 1.0001, r * 2, r * 100}) {
        CHECK(g(x) == 0.0);
        CHECK(g(-x) == 0.0);
      }
    }
}

TEST_CASE("CDFs") {
  CHECK(make_exponential(1).cdf(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(make_tent().cdf(0) == doctest::Approx(0.5));
  const auto g = make_generalized_gaussian(2, 2);
  CHECK(g.cdf(0.5) == doctest::Approx(0.84375).epsilon(1e-12));
  CHECK(g.cdf(0.5) + g.sf(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& f : {make_generalized_gaussian(0.5, 0.8), make_generalized_gaussian(3, 1),
                        make_generalized_gaussian(0, 1.5), make_laplace(1), make_exponential(2), make_tent()}) {
    double prev = -1;
    const auto s = f.support();
    const double lo = std::isfinite(s.lo) ? s.lo : -20, hi = std::isfinite(s.hi) ? s.hi : 20;
    for (int i = 0; i <= 100; ++i) {
      const double c = f.cdf(lo + (hi - lo) * i / 100.0);
      CHECK(c >= prev - 1e-15);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
      prev = c;
    }
  }
  // analytic generalized Gaussian CDF against quadrature of the pdf
  const auto h = make_generalized_gaussian(1.5, 0.9);
  const double q = num::integrate([&](double x) { return h(x); }, {-num::kInf, 0.7}, h.hints()).value;
  CHECK(h.cdf(0.7) == doctest::Approx(q).epsilon(1e-9));
}

TEST_CASE("scaling") {
  const auto u2 = scale_density(make_uniform(), 2);
  CHECK(u2(1.9) == doctest::Approx(0.25));
  CHECK(u2(2.1) == 0.0);
  const auto g = scale_density(make_generalized_gaussian(2, 2), 2);
  CHECK(g(1.0) == doctest::Approx(0.375 * 0.75).epsilon(1e-14));
  CHECK(std::abs(mass(g) - 1.0) < 1e-10);
  const auto f = make_laplace(1);
  const auto a = scale_density(scale_density(f, 1.3), 0.7);
  const auto b = scale_density(f, 1.3 * 0.7);
  for (int i = 0; i <= 100; ++i) {
    const double x = -5 + 0.1 * i;
    CHECK(std::abs(a(x) - b(x)) <= 1e-12);
  }
  const auto same = scale_density(make_tent(), 1);
  CHECK(same(0.3) == make_tent()(0.3));
}

TEST_CASE("weighted densities") {
  const auto f1 = make_weighted_density(make_exponential(1), make_constant_weight());
  CHECK(f1.param("chi") == doctest::Approx(1.0));
  const auto f2 = make_weighted_density(make_exponential(1), make_exp_weight(-1));
  CHECK(f2.param("chi") == doctest::Approx(0.5).epsilon(1e-14));
  for (double x : {0.1, 1.0, 3.0}) CHECK(f2(x) == doctest::Approx(2 * std::exp(-2 * x)).epsilon(1e-12));
  const auto f3 = make_weighted_density(make_uniform(), make_power_weight(1));
  CHECK(f3.param("chi") == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(f3(-0.4) == doctest::Approx(0.4).epsilon(1e-10));
  CHECK_THROWS_AS(make_weighted_density(make_exponential(1), make_exp_weight(2)), DomainError);
}

TEST_CASE("tabulated densities") {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 400; ++i) {
    const double x = -1 + i / 200.0;
    xs.push_back(x);
    ys.push_back(2 * (1 - std::abs(x)));  // unnormalized tent
  }
  const auto t = make_tabulated(xs, ys);
  CHECK(std::abs(mass(t) - 1.0) < 1e-12);
  CHECK(t(0.3) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(t.cdf(0) == doctest::Approx(0.5).epsilon(1e-12));
  const std::string path = "tabulated_density_test.csv";
  {
    std::ofstream out(path);
    out << "x,pdf\n";
    for (size_t i = 0; i < xs.size(); ++i) out << xs[i] << "," << ys[i] << "\n";
  }
  const auto l = load_table(path);
  CHECK(l(0.3) == doctest::Approx(0.7).epsilon(1e-12));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_table("does/not/exist.csv"), InputError);
  CHECK_THROWS_AS(make_tabulated({0, 1}, {-1, 1}), InputError);
}

TEST_CASE("derivatives") {
  const auto g = make_generalized_gaussian(2, 2);
  CHECK(g.derivative(0.5) == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(make_tent().derivative(0.5) == -1.0);
  const auto h = make_generalized_gaussian(3, 0.8);
  const double x = 0.6, eps = 1e-6;
  CHECK(h.derivative(x) == doctest::Approx((h(x + eps) - h(x - eps)) / (2 * eps)).epsilon(1e-6));
}
