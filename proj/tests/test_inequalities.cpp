#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "wrenyi/density.hpp"
#include "wrenyi/errors.hpp"
#include "wrenyi/inequalities.hpp"
#include "wrenyi/measures.hpp"
#include "wrenyi/transport.hpp"
#include "wrenyi/weight.hpp"

using namespace wrenyi;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool any_margin_fails(const InequalityVerdict& v) {
  for (const auto& m : v.margins)
    if (!m.satisfied(v.tolerance)) return true;
  return false;
}
}  // namespace

TEST_CASE("verdict rules") {
  CHECK(make_verdict("x", 1.0, 2.0, 1e-9, {}, 1e-7).verdict == Verdict::holds);
  CHECK(make_verdict("x", 2.0, 1.0, 1e-9, {}, 1e-7).verdict == Verdict::violated);
  // within the error bound but outside tolerance
  CHECK(make_verdict("x", 1.0 + 1e-3, 1.0, 1e-2, {}, 1e-7).verdict == Verdict::inconclusive);
  auto eq = make_verdict("x", 1.0, 1.0 + 1e-9, 0.0, {}, 1e-7);
  CHECK(eq.verdict == Verdict::holds);
  CHECK(eq.equality);
  auto unmet = make_verdict("x", 1.0, 2.0, 0.0, {Flag{"m", -1.0, true}}, 1e-7);
  CHECK(unmet.verdict == Verdict::assumptions_unmet);
  // a non-strict margin at -tol/2 still counts as met
  auto edge = make_verdict("x", 1.0, 2.0, 0.0, {Flag{"m", -1e-8, false}}, 1e-7);
  CHECK(edge.verdict == Verdict::holds);
  CHECK(to_string(Verdict::assumptions_unmet) == "assumptions-unmet");
  CHECK(eq.slack == doctest::Approx(1e-9));
}

TEST_CASE("relative Renyi entropy verdicts") {
  const auto f = make_exponential(0.1), g = make_exponential(1.0);
  auto v = check_relative_renyi(f, g, make_exp_weight(-2.0), 1.0);
  CHECK(v.verdict == Verdict::assumptions_unmet);
  CHECK(any_margin_fails(v));
  auto self = check_relative_renyi(g, g, make_exp_weight(0.3), 2.0);
  CHECK(std::abs(self.lhs - self.rhs) <= 1e-7);
  CHECK(check_relative_renyi(make_laplace(1), make_laplace(2), make_constant_weight(), 0.5).verdict ==
        Verdict::holds);
}

TEST_CASE("relative Renyi entropy is nonnegative on random pairs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rate(0.3, 3.0), gam(-0.2, 0.2), pw(0.3, 3.0);
  int checked = 0;
  for (int i = 0; i < 25; ++i) {
    const auto f = make_exponential(rate(rng)), g = make_exponential(rate(rng));
    auto v = check_relative_renyi(f, g, make_exp_weight(gam(rng)), pw(rng));
    if (v.verdict == Verdict::assumptions_unmet) {
      CHECK(any_margin_fails(v));
      continue;
    }
    ++checked;
    CHECK(v.verdict == Verdict::holds);
  }
  CHECK(checked > 5);
}

TEST_CASE("moment-entropy inequality: equality at the generalized Gaussian") {
  for (auto [a, p] : {std::pair{1.0, 2.0}, {2.0, 2.0}, {2.0, 1.5}, {kInf, 2.0}}) {
    for (const auto& w : {make_constant_weight(), make_exp_weight(0.1)}) {
      CAPTURE(a);
      CAPTURE(p);
      CAPTURE(w.descriptor());
      auto v = check_mei(make_generalized_gaussian(a, p), w, a, p);
      CHECK(std::abs(v.slack) <= 1e-5);
      CHECK(v.verdict == Verdict::holds);
    }
  }
}

TEST_CASE("moment-entropy inequality: perturbations are strict") {
  const auto G = make_generalized_gaussian(2, 2);
  for (int i = 1; i <= 6; ++i) {
    const double eps = 0.05 * i;
    auto v = check_mei(make_cosine_perturbation(G, eps, 2.0 + i), make_constant_weight(), 2, 2);
    CAPTURE(eps);
    CHECK(v.verdict == Verdict::holds);
    CHECK(v.slack > 0.0);
    CHECK_FALSE(v.equality);
  }
}

TEST_CASE("tent bound: equality and strictness") {
  auto tent = check_cor2(make_tent(), 0.0);
  CHECK(tent.lhs == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(tent.rhs == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(tent.equality);
  for (int i = 1; i <= 5; ++i) {
    const double eps = 0.05 * i;
    auto v = check_cor2(make_cosine_perturbation(make_tent(), eps, std::numbers::pi), 0.0);
    CHECK(v.verdict == Verdict::holds);
    CHECK(v.slack > 0.0);
  }
  for (const auto& f : {make_uniform(), make_laplace(1), make_generalized_gaussian(2, 2), make_exponential(2)}) {
    auto v = check_cor2(f, 0.0);
    CAPTURE(f.descriptor());
    CHECK(v.verdict == Verdict::holds);
    CHECK(v.slack > 0.0);
  }
  CHECK(cor2_constant(0.0) == doctest::Approx(2.0 / 9.0));
  CHECK_THROWS_AS(check_cor2(make_tent(), -2.5), InputError);
}

TEST_CASE("Laplace moment bound") {
  auto vs = check_cor1(make_laplace(1), 0.0, 1.0, 1.0);
  REQUIRE(vs.size() == 2);
  for (const auto& v : vs) CHECK(v.lhs == doctest::Approx(v.rhs).epsilon(1e-7));
  CHECK(vs[1].lhs == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(vs[1].rhs == doctest::Approx(1.0).epsilon(1e-7));
  for (const auto& v : check_cor1(make_exponential(5), -0.5, 1.0, 1.0)) {
    CHECK_FALSE(any_margin_fails(v));
    CHECK(v.verdict == Verdict::holds);
  }
}

TEST_CASE("parabola moment bound at its own extremal is reported as violated") {
  auto v = check_cor3(make_generalized_gaussian(2, 2));
  CHECK(v.lhs == doctest::Approx(35.0 / 3.0).epsilon(1e-6));
  CHECK(v.verdict == Verdict::violated);
}

TEST_CASE("Fisher and Cramer-Rao at the generalized Gaussian") {
  const auto G = make_generalized_gaussian(2, 2);
  const auto one = make_constant_weight();
  auto t = fii_terms(G, one, 2, 2);
  CHECK(std::abs(t.eta) <= 1e-12);
  CHECK(std::abs(t.kappa) <= 1e-12);
  CHECK(std::abs(t.delta) <= 1e-12);
  CHECK(std::abs(check_fii(G, one, 2, 2).slack) <= 1e-5);
  CHECK(std::abs(check_cri(G, one, 2, 2).slack) <= 1e-5);
  auto w = check_fii(G, make_exp_weight(0.1), 2, 2);
  CHECK(w.verdict == Verdict::holds);
  CHECK_THROWS_AS(check_fii(make_exponential(1), make_power_weight(2), 2, 1), DomainError);
}

TEST_CASE("Laplace transport bounds") {
  for (const auto& v : check_cor4(make_laplace(1), 0.0)) {
    CHECK(v.lhs == doctest::Approx(v.rhs).epsilon(1e-7));
    CHECK(v.verdict == Verdict::holds);
  }
  CHECK(check_cor4(make_laplace(1), 0.7).size() == 1);
  CHECK_THROWS_AS(check_cor4_exponential(make_laplace(1), 0.7), InputError);
  CHECK_THROWS_AS(check_cor4_power(make_laplace(1), -1.0), InputError);
}

TEST_CASE("scaling identity") {
  CHECK(check_scaling_identity(make_power_weight(1), 2, 2, 1.0).residual <= 1e-12);
  CHECK(check_scaling_identity(make_exp_weight(0.3), 2, 2, 1.7).residual <= 1e-7);
  CHECK(check_scaling_identity(make_power_weight(1), kInf, 0.5, 3.0).residual <= 1e-7);
}

TEST_CASE("integration by parts") {
  MapFn tent{[](double x) { return std::max(0.0, 1 - std::abs(x)); }, [](double x) { return x < 0 ? 1.0 : -1.0; },
             "tent"};
  MapFn id{[](double x) { return x; }, [](double) { return 1.0; }, "x"};
  CHECK(lemma4_residual(tent, id, {-1, 1}, {0}).residual <= 1e-7);
  MapFn gs{[](double x) { return std::exp(-x * x); }, [](double x) { return -2 * x * std::exp(-x * x); }, "g"};
  MapFn at{[](double x) { return std::atan(x); }, [](double x) { return 1 / (1 + x * x); }, "atan"};
  CHECK(lemma4_residual(gs, at, {-kInf, kInf}).residual <= 1e-7);
  const auto G = make_generalized_gaussian(2, 2);
  MapFn g22{[G](double x) { return G.pdf(x); }, [G](double x) { return G.derivative(x); }, "G"};
  MapFn cube{[](double x) { return x * x * x; }, [](double x) { return 3 * x * x; }, "x^3"};
  auto r = lemma4_residual(g22, cube, G.support());
  CHECK(r.residual <= 1e-7);
  CHECK(r.boundary_ok);
}

TEST_CASE("transport maps push f onto g") {
  const std::vector<std::pair<Density, Density>> pairs = {
      {make_exponential(1), make_laplace(1)},
      {make_laplace(1), make_generalized_gaussian(2, 2)},
      {make_tent(), make_uniform()},
      {make_generalized_gaussian(2, 1), make_tent()},
      {make_exponential(2), make_generalized_gaussian(1, 1.5)},
      {make_uniform(), make_generalized_gaussian(2, 0.8)},
  };
  for (const auto& [f, g] : pairs) {
    CAPTURE(f.descriptor());
    CAPTURE(g.descriptor());
    auto s = build_transport(f, g);
    CHECK(s.increasing());
    CHECK(s.max_cdf_mismatch() <= 1e-9);
    for (double u : {0.1, 0.37, 0.5, 0.81}) {
      const double x = inverse_cdf(f, u, 1.0 - u);
      CHECK(g.cdf(s(x)) == doctest::Approx(u).epsilon(1e-9));
    }
  }
  auto id = build_transport(make_tent(), make_tent());
  CHECK(id.is_identity());
  CHECK(id(0.3) == 0.3);
}
