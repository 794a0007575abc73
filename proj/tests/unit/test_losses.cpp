#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "iprob/decisions.hpp"
#include "iprob/error.hpp"
#include "iprob/losses.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

using namespace iprob;

TEST_CASE("cost-sensitive matrices") {
  const auto s = fixtures::rain_space();
  const auto l = cost_sensitive_matrix(0.1, *s);
  CHECK(l(0, 0) == 0.0);
  CHECK(l(0, 1) == doctest::Approx(0.9));
  CHECK(l(1, 0) == doctest::Approx(0.1));
  CHECK(l(1, 1) == 0.0);
  const auto h = cost_sensitive_matrix(0.5, *s);
  CHECK(h(0, 1) == 0.5);
  CHECK(h(1, 0) == 0.5);
  const auto n = cost_sensitive_matrix(0.9, *s);
  CHECK(n(0, 1) == doctest::Approx(0.1));
  CHECK(n(1, 0) == doctest::Approx(0.9));
  const auto unlabeled = make_space(OutcomeSpace({"a", "b"}, {0, 0}));
  CHECK_THROWS_AS(cost_sensitive_matrix(0.1, *unlabeled), DomainError);
  CHECK_THROWS_AS(cost_sensitive_matrix(1.0, *s), DomainError);
}

TEST_CASE("loss matrix validation") {
  CHECK_THROWS_AS(LossMatrix({{1.0, 2.0}}), DomainError);
  CHECK_THROWS_AS(LossMatrix({{1.0, 2.0}, {1.0}}), DimensionError);
  CHECK_THROWS_AS(LossMatrix({{1.0, NAN}, {1.0, 0.0}}), DomainError);
}

TEST_CASE("winkler loss values") {
  for (double c : {0.1, 0.3, 0.5, 0.9}) {
    CHECK(winkler_loss(c, c, 0.0, false) == 1.0);
    CHECK(winkler_loss(c, c, 1.0, false) == 1.0);
  }
  CHECK(winkler_loss(0.1, 1.0, 1.0, false) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(winkler_loss(0.1, 0.0, 0.0, false) == doctest::Approx(0.0).epsilon(1e-15));
  // symmetric case is 4 times the Brier loss
  CHECK(winkler_loss(0.5, 0.2, 1.0, false) == doctest::Approx(4 * 0.64));
}

TEST_CASE("winkler strict propriety on a grid") {
  for (double q : {0.05, 0.1, 0.3, 0.7, 0.95}) {
    double best = INFINITY;
    double arg = -1.0;
    for (int j = 0; j <= 1000; ++j) {
      const double a = j / 1000.0;
      const double v = q * winkler_loss(0.1, a, 1.0, false) + (1 - q) * winkler_loss(0.1, a, 0.0, false);
      if (v < best) {
        best = v;
        arg = a;
      }
    }
    CHECK(std::abs(arg - q) <= 1e-3 + 1e-12);
  }
}

TEST_CASE("winkler gradient against finite differences") {
  oracles::Gen gen(21);
  for (int t = 0; t < 1000; ++t) {
    const double c = gen.uniform(0.05, 0.95);
    const double a = gen.uniform(0.0, 1.0);
    const double y = gen.uniform() < 0.5 ? 0.0 : 1.0;
    const double g = winkler_gradient(c, a, y);
    const double fd = oracles::central_difference([&](double v) { return winkler_loss(c, v, y, true); }, a);
    REQUIRE(std::abs(g - fd) <= 1e-4 * std::max(1.0, std::abs(g)));
  }
  CHECK(std::isfinite(winkler_gradient(0.3, 0.3, 1.0)));
  // c = 0.5 is 4 (a - y)^2 whose derivative is 8 (a - y)
  for (double a : {0.1, 0.35, 0.8}) {
    CHECK(winkler_gradient(0.5, a, 1.0) == doctest::Approx(8.0 * (a - 1.0)));
  }
}

TEST_CASE("smoothed and exact winkler agree away from c") {
  // With f = 1000 the gap is below 1e-3 once |a - c| > 0.016 for c in [0.05, 0.95].
  for (double c = 0.05; c < 0.96; c += 0.05) {
    for (int j = 0; j <= 2000; ++j) {
      const double a = j / 2000.0;
      if (std::abs(a - c) <= 0.016) continue;
      for (double y : {0.0, 1.0}) {
        REQUIRE(std::abs(winkler_loss(c, a, y, true) - winkler_loss(c, a, y, false)) < 1e-3);
      }
    }
  }
  // The narrower band |a - c| > 0.01 is not enough for small c.
  CHECK(std::abs(winkler_loss(0.1, 0.089, 1.0, true) - winkler_loss(0.1, 0.089, 1.0, false)) > 1e-3);
}

TEST_CASE("unsmoothed values are finite on a grid") {
  for (double c : {0.01, 0.1, 0.5, 0.99}) {
    for (int j = 0; j <= 100; ++j) {
      CHECK(std::isfinite(winkler_loss(c, j / 100.0, 0.0, false)));
      CHECK(std::isfinite(winkler_loss(c, j / 100.0, 1.0, false)));
    }
  }
}

TEST_CASE("action space discretization") {
  const auto s = fixtures::rain_space();
  const auto two = discretize_action_space(ParametricBinaryLoss::cost_sensitive(0.3), 2, *s);
  const auto cs = cost_sensitive_matrix(0.3, *s);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t w = 0; w < 2; ++w) CHECK(two(a, w) == doctest::Approx(cs(a, w)));
  }
  const auto wk = discretize_action_space(ParametricBinaryLoss::winkler(0.1), 101, *s);
  CHECK(wk.action_count() == 101);
  CHECK(wk(10, 0) == doctest::Approx(winkler_loss(0.1, 0.1, 0.0, false)));
  CHECK(wk(10, 1) == doctest::Approx(winkler_loss(0.1, 0.1, 1.0, false)));

  const auto lg = discretize_action_space(ParametricBinaryLoss::log_loss(), 1001, *s);
  CHECK(lg(0, 1) == doctest::Approx(-std::log(1e-12)));
  for (double q : {0.137, 0.5, 0.91}) {
    const auto c = CredalSet::singleton(s, ProbVec::from({1 - q, q}));
    const auto choice = minmax_action(c, lg);
    CHECK(choice.action_index == static_cast<std::size_t>(std::lround(q * 1000)));
  }
  CHECK_THROWS_AS(discretize_action_space(ParametricBinaryLoss::log_loss(), 1, *s), DomainError);
}

TEST_CASE("parametric losses") {
  const auto cs = ParametricBinaryLoss::cost_sensitive(0.2);
  CHECK(cs.value(0.0, 1.0) == doctest::Approx(0.8));
  CHECK(cs.value(1.0, 0.0) == doctest::Approx(0.2));
  CHECK(cs.value(0.5, 1.0) == doctest::Approx(0.4));
  CHECK(ParametricBinaryLoss::brier().value(0.25, 1.0) == doctest::Approx(0.5625));
  CHECK(ParametricBinaryLoss::log_loss().value(0.0, 1.0) == doctest::Approx(-std::log(1e-12)));
  CHECK_THROWS_AS(ParametricBinaryLoss::winkler(0.0), DomainError);
  CHECK_THROWS_AS(ParametricBinaryLoss::winkler(0.5, -1.0), DomainError);
  CHECK(ParametricBinaryLoss::winkler(0.1).id() == "winkler(0.1)");
  for (auto l : {ParametricBinaryLoss::log_loss(), ParametricBinaryLoss::brier(), cs,
                 ParametricBinaryLoss::winkler(0.3)}) {
    for (double a : {0.2, 0.6}) {
      for (double y : {0.0, 1.0}) {
        const double fd = oracles::central_difference([&](double v) { return l.train_value(v, y); }, a);
        CHECK(l.train_gradient(a, y) == doctest::Approx(fd).epsilon(1e-5));
      }
    }
  }
}
