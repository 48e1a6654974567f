#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wrenyi/calculus.hpp"
#include "wrenyi/errors.hpp"
#include "wrenyi/quadrature.hpp"
#include "wrenyi/special.hpp"

using namespace wrenyi;
using namespace wrenyi::num;

TEST_CASE("quadrature: elementary integrals") {
  CHECK(integrate([](double x) { return x; }, {0, 1}).value == doctest::Approx(0.5).epsilon(1e-14));
  auto e = integrate([](double x) { return std::exp(-x); }, {0, kInf});
  CHECK(e.status == QuadStatus::converged);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
  auto g = integrate([](double x) { return std::exp(-x * x); }, {-kInf, kInf});
  CHECK(g.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("quadrature: polynomials are integrated to rounding") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-15;
  cfg.rel_tol = 1e-14;
  for (int d = 0; d <= 29; ++d) {
    auto r = integrate([d](double x) { return std::pow(x, d); }, {-0.5, 2.0}, {}, cfg);
    const double exact = (std::pow(2.0, d + 1) - std::pow(-0.5, d + 1)) / (d + 1);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("quadrature: endpoint singularities and heavy tails") {
  auto s = integrate([](double x) { return 1.0 / std::sqrt(x); }, {0, 1});
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-10));
  auto l = integrate([](double x) { return std::log(x) * std::log(x); }, {0, 1});
  CHECK(l.value == doctest::Approx(2.0).epsilon(1e-10));
  auto t = integrate([](double x) { return std::pow(1 + x * x, -1.25); }, {-kInf, kInf}, std::vector<double>{0.0});
  // int (1+x^2)^{-5/4} = sqrt(pi) Gamma(3/4)/Gamma(5/4)
  CHECK(t.value == doctest::Approx(std::sqrt(std::numbers::pi) * std::tgamma(0.75) / std::tgamma(1.25)).epsilon(1e-9));
  auto h = integrate([](double x) { return std::pow(x, -0.5) * std::exp(-5 * x); }, {0, kInf});
  CHECK(h.value == doctest::Approx(std::sqrt(std::numbers::pi / 5)).epsilon(1e-10));
}

TEST_CASE("quadrature: divergence is reported") {
  auto d = integrate([](double x) { return std::exp(0.5 * x); }, {0, kInf});
  CHECK(d.status == QuadStatus::divergent);
  auto h = integrate([](double x) { return 1.0 / (1.0 + x); }, {0, kInf});
  CHECK(h.status == QuadStatus::divergent);
  CHECK_THROWS_AS(integrate_value([](double x) { return std::exp(x); }, {0, kInf}), DomainError);
}

TEST_CASE("quadrature: additivity and linearity") {
  auto f = [](double x) { return std::exp(-x) * std::cos(x); };
  const double whole = integrate(f, {0, 3}).value;
  const double parts = integrate(f, {0, 1.2}).value + integrate(f, {1.2, 3}).value;
  CHECK(whole == doctest::Approx(parts).epsilon(1e-10));
  const double lin = integrate([&](double x) { return 2 * f(x) + 3 * x; }, {0, 3}).value;
  CHECK(lin == doctest::Approx(2 * whole + 13.5).epsilon(1e-10));
  CHECK(integrate(f, {3, 0}).value == doctest::Approx(-whole).epsilon(1e-12));
}

TEST_CASE("special functions") {
  CHECK(gamma_fn(5) == doctest::Approx(24).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK_THROWS_AS(gamma_fn(-2), InputError);
  CHECK_THROWS_AS(beta_fn(0, 1), InputError);
  CHECK(beta_fn(2, 3) == doctest::Approx(1.0 / 12).epsilon(1e-14));
  for (double a : {0.3, 1.7, 4.2})
    for (double b : {0.5, 2.5, 9.0}) CHECK(beta_fn(a, b) == beta_fn(b, a));
  CHECK(beta_fn(0.5, 0.5) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(gamma_fn(3.7) == doctest::Approx(2.7 * gamma_fn(2.7)).epsilon(1e-14));
  CHECK(factorial(3) == doctest::Approx(6));
  CHECK(ibeta(2, 3, 0.3) + ibetac(2, 3, 0.3) == doctest::Approx(1.0));
  CHECK(gamma_p(1, 2) == doctest::Approx(1 - std::exp(-2.0)));
}

TEST_CASE("differentiate") {
  CHECK(differentiate([](double x) { return std::sin(x); }, 0.3) == doctest::Approx(std::cos(0.3)).epsilon(1e-9));
  CHECK(differentiate([](double x) { return 1 - std::abs(x); }, 0.5) == doctest::Approx(-1).epsilon(1e-9));
  CHECK(differentiate([](double x) { return x * x; }, 0.0, {0, 1}) == doctest::Approx(0).epsilon(1e-9));
}

TEST_CASE("find_root") {
  CHECK(find_root([](double x) { return x * x - 2; }, 0, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(find_root([](double x) { return std::cos(x) - x; }, 0, 1) == doctest::Approx(0.7390851332151607).epsilon(1e-12));
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1; }, -1, 1), EvaluationError);
}

TEST_CASE("essential supremum") {
  CHECK(essential_supremum([](double x) { return std::abs(x); }, {-1, 1}) == doctest::Approx(1).epsilon(1e-10));
  CHECK(essential_supremum([](double x) { return x * (1 - x); }, {0, 1}) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(essential_supremum([](double x) { return std::exp(-x); }, {0, kInf}) == doctest::Approx(1).epsilon(1e-9));
  CHECK_THROWS_AS(essential_supremum([](double x) { return std::exp(x); }, {0, kInf}), DomainError);
  CHECK_THROWS_AS(essential_supremum([](double x) { return x; }, {0, kInf}), DomainError);
}

TEST_CASE("total variation") {
  CHECK(total_variation([](double x) { return std::max(0.0, 1 - std::abs(x)); }, {-kInf, kInf}, std::vector<double>{-1, 0, 1}) ==
        doctest::Approx(2).epsilon(1e-9));
  // Uniform 1/2 on [-1, 1], zero outside: two jumps of 1/2.
  CHECK(total_variation([](double) { return 0.5; }, {-1, 1}) == doctest::Approx(1).epsilon(1e-10));
  CHECK(total_variation([](double x) { return std::sin(x); }, {0, 2 * std::numbers::pi}) ==
        doctest::Approx(4).epsilon(1e-9));
  // Monotone: |f(b) - f(a)| plus the end jumps.
  CHECK(total_variation([](double x) { return std::exp(x); }, {0, 1}) ==
        doctest::Approx((std::exp(1.0) - 1) + 1 + std::exp(1.0)).epsilon(1e-10));
}
