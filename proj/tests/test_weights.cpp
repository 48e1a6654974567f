#include <doctest.h>

#include <cmath>
#include <random>

#include "wrenyi/calculus.hpp"
#include "wrenyi/density.hpp"
#include "wrenyi/errors.hpp"
#include "wrenyi/quadrature.hpp"
#include "wrenyi/weight.hpp"

using namespace wrenyi;

namespace {
std::vector<WeightFunction> catalog() {
  const auto g = make_generalized_gaussian(2, 1);
  return {make_constant_weight(2.0),          make_exp_weight(0.3),
          make_exp_weight(-1.2),              make_power_weight(2),
          make_power_weight(1.5),             make_abs_polynomial_weight({1, 0.5, 2}),
          make_density_polynomial_weight(g, {1, 2}), make_density_power_weight(g, 1, 2)};
}
}  // namespace

TEST_CASE("derivative consistency at smooth points") {
  for (const auto& w : catalog())
    for (double x : {-1.3, -0.4, 0.35, 0.9, 2.2}) {
      CAPTURE(w.descriptor());
      CAPTURE(x);
      const double d = num::differentiate([&](double t) { return w(t); }, x);
      CHECK(std::abs(w.derivative(x) - d) <= 1e-5 * (1 + std::abs(w.derivative(x))));
    }
}

TEST_CASE("catalog weights are nonnegative") {
  for (const auto& w : catalog())
    for (int i = 0; i <= 1000; ++i) CHECK(w(-5 + 0.01 * i) >= 0.0);
  CHECK_FALSE(make_abs_polynomial_weight({1, -2, -1, 2}).warnings().empty());
}

TEST_CASE("power-of algebra") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> r(-3, 3), x(-2, 2);
  const auto base = make_exp_weight(0.4);
  for (int i = 0; i < 50; ++i) {
    const double e = r(rng), t = x(rng);
    CHECK(power_of(base, e)(t) == std::pow(base(t), e));
  }
  double s, g;
  CHECK(power_of(base, 2.5).exp_linear_form(&s, &g));
  CHECK(g == doctest::Approx(1.0));
  CHECK(power_of(make_constant_weight(), -2).is_constant());
}

TEST_CASE("phi-star") {
  const auto w = make_exp_weight(0.2);
  const auto same = derive_phi_star(w, 1.7, 1.7);
  CHECK(same(0.8) == w(0.8));
  const auto pw = derive_phi_star(make_power_weight(3), 2, 1);
  CHECK(pw(0.7) == doctest::Approx(8 * std::pow(0.7, 3)).epsilon(1e-14));
  CHECK(derive_phi_star(w, 2, 1)(1.0) == doctest::Approx(std::exp(0.4)).epsilon(1e-14));
  CHECK_THROWS_AS(derive_phi_star(w, 0, 1), InputError);
}

TEST_CASE("rho weights") {
  auto r = derive_rho12(make_constant_weight(), 2, 2);
  CHECK(r.rho1(0.3) == 1.0);
  CHECK(r.rho2(0.3) == 1.0);
  const double g = 0.3;
  auto e = derive_rho12(make_exp_weight(g), 2, 2);
  CHECK(e.exponent1 == -2);
  CHECK(e.exponent2 == 4);
  CHECK(e.rho1(0.5) == doctest::Approx(std::exp(-2 * g * 0.5)).epsilon(1e-14));
  CHECK(e.rho2(0.5) == doctest::Approx(std::exp(4 * g * 0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(derive_rho12(make_power_weight(1), 1, 2), InputError);
  CHECK_THROWS_AS(derive_rho12(make_exp_weight(g), 2, 1), InputError);

  const auto one = derive_rho_s(make_constant_weight(), linear_map(3), 2);
  CHECK(one(0.4) == 1.0);
  CHECK(one.derivative(0.4) == 0.0);
  const auto w = make_exp_weight(0.7);
  const auto ident = derive_rho_s(w, identity_map(), 2);
  CHECK(ident(0.4) == doctest::Approx(w(0.4)).epsilon(1e-14));
  const auto flat = derive_rho_s(make_exp_weight(1), linear_map(2), 2);
  CHECK(flat(0.9) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(flat.derivative(0.9) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(derive_rho_s(make_power_weight(1), identity_map(), 2)(0.0), DomainError);
}

TEST_CASE("composition") {
  const auto w = make_power_weight(1);
  const auto c = compose_with_map(w, identity_map());
  CHECK(c(-0.6) == w(-0.6));
  MapFn lg{[](double x) { return std::log1p(x); }, [](double x) { return 1 / (1 + x); }, "log1p"};
  const auto e = compose_with_map(make_exp_weight(0.5), lg);
  CHECK(e(2.0) == doctest::Approx(std::pow(3.0, 0.5)).epsilon(1e-14));
  CHECK(e.derivative(2.0) == doctest::Approx(0.5 * std::pow(3.0, -0.5)).epsilon(1e-12));
}

TEST_CASE("antiderivatives") {
  auto a = antiderivatives(make_constant_weight());
  CHECK(a.psi(0.7) == doctest::Approx(0.7));
  CHECK(a.psi_bar(0.7) == 0.0);
  const double g = 0.6;
  auto e = antiderivatives(make_exp_weight(g));
  CHECK(e.psi(1) - e.psi(-1) == doctest::Approx((std::exp(g) - std::exp(-g)) / g).epsilon(1e-12));
  CHECK(e.psi_bar(1) - e.psi_bar(-1) == doctest::Approx(2 * std::sinh(g)).epsilon(1e-12));
  auto p = antiderivatives(make_power_weight(1));
  CHECK(p.psi(1) - p.psi(-1) == doctest::Approx(1.0).epsilon(1e-10));
  for (const auto& w : catalog()) {
    auto ad = antiderivatives(w);
    CHECK(ad.psi(0) == 0.0);
    CHECK(ad.psi_bar(0) == doctest::Approx(0.0));
    for (double x : {-1.0, -0.3, 0.5, 1.0}) {
      const double q = num::integrate_value([&](double t) { return w(t); }, {std::min(0.0, x), std::max(0.0, x)},
                                            w.hints());
      CHECK(ad.psi(x) == doctest::Approx(x < 0 ? -q : q).epsilon(1e-8));
    }
  }
}

TEST_CASE("Hoelder conjugate") {
  CHECK(holder_conjugate(2) == 2);
  CHECK(std::isinf(holder_conjugate(1)));
  CHECK(holder_conjugate(num::kInf) == 1);
  CHECK(holder_conjugate(3) == doctest::Approx(1.5));
}
