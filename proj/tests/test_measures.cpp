#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wrenyi/density.hpp"
#include "wrenyi/errors.hpp"
#include "wrenyi/measures.hpp"
#include "wrenyi/weight.hpp"
#include "wrenyi/weighted_density.hpp"

using namespace wrenyi;

namespace {
MeasureOptions quadrature_only() {
  MeasureOptions o;
  o.allow_closed_form = false;
  return o;
}
}  // namespace

TEST_CASE("weighted entropy examples") {
  const auto one = make_constant_weight();
  CHECK(weighted_entropy(make_exponential(1), one).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(weighted_entropy(make_laplace(1), one).value == doctest::Approx(1 + std::log(2.0)).epsilon(1e-10));
  // exponential weight: closed form and quadrature agree
  for (double lam : {0.5, 1.0, 3.0})
    for (double g : {-1.0, -0.2, 0.3}) {
      if (g >= lam) continue;
      const auto f = make_exponential(lam);
      const auto w = make_exp_weight(g);
      const double cf = weighted_entropy(f, w).value;
      const double q = weighted_entropy(f, w, quadrature_only()).value;
      CHECK(q == doctest::Approx(cf).epsilon(1e-8));
      CHECK(cf == doctest::Approx(lam / (lam - g) * (1 - std::log(lam) + g / (lam - g))).epsilon(1e-12));
    }
}

TEST_CASE("relative weighted entropy") {
  const auto one = make_constant_weight();
  CHECK(std::abs(relative_weighted_entropy(make_exponential(2), make_exponential(2), one).value) < 1e-12);
  CHECK(relative_weighted_entropy(make_exponential(2), make_exponential(1), one, quadrature_only()).value ==
        doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-9));
  const auto f = make_exponential(3.5), g = make_exponential(1.5);
  const auto w = make_exp_weight(-1);
  CHECK(relative_weighted_entropy(f, g, w).value ==
        doctest::Approx(relative_weighted_entropy(f, g, w, quadrature_only()).value).epsilon(1e-8));
}

TEST_CASE("Renyi entropy and power") {
  const auto one = make_constant_weight();
  const auto f = make_exponential(1);
  CHECK(weighted_renyi_entropy(f, one, 2).value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  const auto w = make_exp_weight(-0.5);
  CHECK(weighted_renyi_entropy(f, w, 2).value == doctest::Approx(std::log(2.5)).epsilon(1e-12));
  CHECK(weighted_renyi_entropy(f, w, 2, quadrature_only()).value == doctest::Approx(std::log(2.5)).epsilon(1e-9));
  CHECK(weighted_renyi_power(f, w, 2).value == doctest::Approx(2.5).epsilon(1e-12));
  for (double p : {0.5, 1.7, 3.0})
    CHECK(weighted_renyi_entropy(make_uniform(), one, p).value == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(weighted_renyi_entropy(f, one, 1.0), InputError);
  CHECK(weighted_renyi_power(make_laplace(1), one, 1.0).value == doctest::Approx(2 * std::numbers::e).epsilon(1e-9));
  CHECK(weighted_renyi_power(f, w, 1.0).branch == "p=1");
  // validity gate
  CHECK_THROWS_AS(weighted_renyi_entropy(f, make_exp_weight(3), 2), DomainError);
}

TEST_CASE("power is continuous through p = 1 when E_f[phi] = 1") {
  // Continuity of the power at p = 1 needs E_f[phi] = 1; rescale the weight.
  const auto f = make_exponential(1);
  const double chi = weighted_expectation(f, make_exp_weight(-0.5)).value;
  const auto w = product(make_constant_weight(1.0 / chi), make_exp_weight(-0.5));
  const double n1 = weighted_renyi_power(f, w, 1.0).value;
  const double lo = weighted_renyi_power(f, w, 1.0 - 1e-4).value;
  const double hi = weighted_renyi_power(f, w, 1.0 + 1e-4).value;
  CHECK(std::abs(lo - n1) < 1e-3);
  CHECK(std::abs(hi - n1) < 1e-3);
  CHECK((lo - n1) * (hi - n1) <= 0.0);
}

TEST_CASE("relative Renyi entropy") {
  const auto w = make_exp_weight(-2);
  auto d = relative_renyi_entropy(make_exponential(0.1), make_exponential(1), w, 1.0);
  CHECK(d.value == doctest::Approx(std::log(0.1) + 0.9 / 2.1).epsilon(1e-10));
  CHECK(d.flags.back().margin < 0);
  auto d2 = relative_renyi_entropy(make_exponential(3.5), make_exponential(1.5), make_exp_weight(-1), 1.0);
  CHECK(d2.value == doctest::Approx(std::log(7.0 / 3.0) - 2.0 / 4.5).epsilon(1e-10));
  CHECK(d2.flags.back().margin >= 0);
  for (double p : {0.5, 2.0}) {
    const auto f = make_exponential(1.3), g = make_exponential(0.7);
    const auto ww = make_exp_weight(-0.3);
    const double cf = relative_renyi_entropy(f, g, ww, p).value;
    CHECK(cf >= -1e-12);
    CHECK(relative_renyi_entropy(f, g, ww, p, quadrature_only()).value == doctest::Approx(cf).epsilon(1e-7));
    CHECK(std::abs(relative_renyi_entropy(f, f, ww, p).value) < 1e-12);
  }
}

TEST_CASE("relative Renyi entropy is nonnegative on random pairs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    const double p = i % 2 ? 0.5 : 2.0;
    const double tf = u(rng), tg = u(rng);
    // For p < 1 the integral of g^{p-1} f needs (1-p)/tg^2 < 1/tf^2.
    if (p < 1 && (1 - p) * tf * tf >= tg * tg) continue;
    const auto f = make_generalized_gaussian(2, 1, tf);
    const auto g = make_generalized_gaussian(2, 1, tg);
    const auto d = relative_renyi_entropy(f, g, make_exp_weight(0.2 * (u(rng) - 1.5)), p);
    CHECK(d.value >= -1e-9);
    ++checked;
  }
  CHECK(checked >= 15);
}

TEST_CASE("moments and deviations") {
  const auto one = make_constant_weight();
  CHECK(generalized_moment(make_exponential(1), one, 1).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(generalized_moment(make_uniform(), one, 2).value == doctest::Approx(1.0 / 3).epsilon(1e-10));
  const auto poly = make_abs_polynomial_weight({1, -2, -1, 2});
  auto dev = generalized_deviation(make_exponential(1), poly, 1);
  CHECK(std::abs(dev.value - 39.0) < 1e-9);
  CHECK(generalized_deviation(make_exponential(1), poly, 1, quadrature_only()).value ==
        doctest::Approx(39.0).epsilon(1e-9));
  CHECK(generalized_deviation(make_uniform(), one, num::kInf).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(generalized_deviation(make_generalized_gaussian(2, 2), one, 2).value ==
        doctest::Approx(std::sqrt(0.2)).epsilon(1e-9));
  // Exponential weight moment: closed form vs quadrature
  const auto w = make_exp_weight(0.4);
  CHECK(generalized_moment(make_exponential(2), w, 1.5).value ==
        doctest::Approx(generalized_moment(make_exponential(2), w, 1.5, quadrature_only()).value).epsilon(1e-8));
  // alpha = 0 deviation of the uniform: exp(E log|x|) = e^{-1}
  CHECK(generalized_deviation(make_uniform(), one, 0).value == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
}

TEST_CASE("abs-polynomial deviation decreases on (1, 2)") {
  const auto poly = make_abs_polynomial_weight({1, -2, -1, 2});
  for (double lam : {0.5, 0.8, 1.19}) {
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 10; ++k) {
      const double s = generalized_deviation(make_exponential(lam), poly, 1.0 + 0.1 * k).value;
      CHECK(s < prev);
      prev = s;
    }
  }
}

TEST_CASE("deviation is continuous in alpha") {
  const auto w = make_exp_weight(0.1);
  for (const auto& f : {make_exponential(1), make_generalized_gaussian(2, 2), make_laplace(1)}) {
    const double lo = generalized_deviation(f, w, 1 - 1e-3).value;
    const double hi = generalized_deviation(f, w, 1 + 1e-3).value;
    CHECK(std::abs(lo - hi) < 1e-2);
  }
}

TEST_CASE("Fisher informations") {
  const auto tent = make_tent();
  auto j = fisher_information(tent, 2, 2);
  CHECK(j.value == doctest::Approx(1.0).epsilon(1e-9));
  const auto g22 = make_generalized_gaussian(2, 2);
  // int (G')^2 G = (3/4)^3 int 4x^2 (1-x^2) = (27/64)(16/15)
  CHECK(fisher_information(g22, 2, 2).part("raw") == doctest::Approx(27.0 / 64 * 16 / 15).epsilon(1e-9));
  CHECK(fisher_information(make_uniform(), 2, 2).value == 0.0);
  const auto one = make_constant_weight();
  CHECK(weighted_fisher_information(g22, one, 2, 2).value ==
        doctest::Approx(fisher_information(g22, 2, 2).part("raw")).epsilon(1e-10));
  for (double p : {0.5, 1.0, 2.0, 3.0})
    CHECK(weighted_fisher_information(make_uniform(), one, num::kInf, p).value ==
          doctest::Approx(std::pow(2.0, 1 - p) / p).epsilon(1e-8));
}

TEST_CASE("density-polynomial weight splits into unweighted Fisher terms") {
  const auto f = make_generalized_gaussian(2, 1);
  const std::vector<double> b = {0.5, 1.0, 2.0};
  const auto w = make_density_polynomial_weight(f, b);
  const double alpha = 3.0, p = 1.5, beta = 1.5;
  double expected = 0.0;
  for (size_t i = 0; i < b.size(); ++i) {
    const double pi = p + i / beta;
    expected += b[i] * fisher_information(f, alpha, pi).part("raw");
  }
  CHECK(weighted_fisher_information(f, w, alpha, p).value == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("weighted-density identity") {
  for (double lam : {0.7, 2.0})
    for (double g : {-0.5, 0.2}) {
      const auto f = make_exponential(lam);
      const auto w = make_exp_weight(g);
      const double p = 2.0;
      const auto fw = make_weighted_density(f, w);
      const double chi = fw.param("chi");
      const double lhs = weighted_renyi_entropy(f, power_of(w, p), p).value;
      const double rhs = weighted_renyi_entropy(fw, make_constant_weight(), p).value + p / (1 - p) * std::log(chi);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
    }
}

TEST_CASE("score-weight identity") {
  // phi = |f'|^beta / f gives N = J_{alpha,r}^{beta r/(1-p)}, r = (p + 2 beta - 2)/beta.
  const auto f = make_generalized_gaussian(2, 1);
  const double alpha = 2, beta = 2;
  for (double p : {0.8, 1.5, 2.0}) {
    const auto w = make_density_power_weight(f, -1.0, beta);
    const double r = (p + 2 * beta - 2) / beta;
    const double lhs = weighted_renyi_power(f, w, p).value;
    const double j = fisher_information(f, alpha, r).value;
    CHECK(lhs == doctest::Approx(std::pow(j, beta * r / (1 - p))).epsilon(1e-5));
  }
}

TEST_CASE("unit weight reduces to unweighted values") {
  const auto one = make_constant_weight();
  for (const auto& f : {make_exponential(1.5), make_laplace(0.7), make_tent(), make_generalized_gaussian(3, 1.5)}) {
    CHECK(weighted_expectation(f, one).value == doctest::Approx(1.0).epsilon(1e-8));
    const double h = weighted_entropy(f, one).value;
    CHECK(weighted_renyi_power(f, one, 1.0).value == doctest::Approx(std::exp(h)).epsilon(1e-8));
  }
}
