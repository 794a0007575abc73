#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "iprob/decisions.hpp"
#include "iprob/entropy.hpp"
#include "iprob/error.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

using namespace iprob;

namespace {

std::vector<std::vector<double>> rows_of(const CredalSet& c) {
  std::vector<std::vector<double>> out;
  for (const auto& v : c.vertices()) out.emplace_back(v.values().begin(), v.values().end());
  return out;
}

std::vector<std::vector<double>> rows_of(const LossMatrix& l) {
  std::vector<std::vector<double>> out;
  for (std::size_t a = 0; a < l.action_count(); ++a) {
    out.emplace_back(l.row(a).values().begin(), l.row(a).values().end());
  }
  return out;
}

}  // namespace

TEST_CASE("unconditional entropy of the umbrella problem") {
  const auto s = fixtures::rain_space();
  const auto l = fixtures::umbrella_loss();
  CHECK(entropy_unconditional(ProbVec::from({0.9, 0.1}), l) == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(entropy_unconditional(ProbVec::from({1.0, 0.0}), l) == 0.0);
  // peak of the entropy sits at p = c
  double best = -1.0, arg = -1.0;
  for (int t = 0; t <= 1000; ++t) {
    const double p = t / 1000.0;
    const double h = entropy_unconditional(ProbVec::from({1.0 - p, p}), l);
    if (h > best + 1e-15) {
      best = h;
      arg = p;
    }
  }
  CHECK(arg == doctest::Approx(0.1));
  CHECK(best == doctest::Approx(0.09));
}

TEST_CASE("conditional entropy on the sky fixture") {
  const auto s = fixtures::sky_space();
  const auto l = cost_sensitive_matrix(0.1, *s);
  CHECK(entropy_conditional(ProbVec::from(fixtures::p1()), l, *s) == doctest::Approx(0.029).epsilon(1e-13));
  CHECK(entropy_conditional(ProbVec::from(fixtures::p2()), l, *s) == doctest::Approx(0.022).epsilon(1e-13));
  // never above the unconditional entropy
  oracles::Gen gen(5);
  for (int t = 0; t < 500; ++t) {
    const auto sp = gen.space(gen.index(2, 6), gen.index(1, 3));
    const auto ll = gen.loss(gen.index(2, 4), sp->size());
    const auto p = ProbVec::from(gen.simplex(sp->size()));
    REQUIRE(entropy_conditional(p, ll, *sp) <= entropy_unconditional(p, ll) + 1e-12);
  }
}

TEST_CASE("lifted action enumeration") {
  const auto s = fixtures::sky_space();
  const auto l = cost_sensitive_matrix(0.1, *s);
  CHECK(lifted_action_count(*s, l) == 4);
  const auto all = enumerate_lifted_actions(*s, l);
  REQUIRE(all.size() == 4);
  CHECK(all[0].per_feature_action == std::vector<std::size_t>{0, 0});
  CHECK(all[1].per_feature_action == std::vector<std::size_t>{0, 1});
  CHECK(all[2].per_feature_action == std::vector<std::size_t>{1, 0});
  CHECK(all[3].per_feature_action == std::vector<std::size_t>{1, 1});
  const auto g = lifted_loss(l, *s, all[2]);
  CHECK(g[0] == doctest::Approx(0.1));
  CHECK(g[1] == 0.0);
  CHECK(g[2] == 0.0);
  CHECK(g[3] == doctest::Approx(0.9));
  CHECK_THROWS_AS(lifted_loss(fixtures::umbrella_loss(), *s, all[2]), DimensionError);

  std::vector<std::string> labels;
  std::vector<std::size_t> feat;
  for (std::size_t i = 0; i < 21; ++i) {
    labels.push_back("w" + std::to_string(i));
    feat.push_back(i);
  }
  const OutcomeSpace wide(labels, feat);
  const LossMatrix two({std::vector<double>(21, 0.0), std::vector<double>(21, 1.0)});
  CHECK_THROWS_AS(lifted_action_count(wide, two), DomainError);
  CHECK(lifted_action_count(wide, two, 1u << 21) == (1u << 21));
}

TEST_CASE("maxent on the lifted sky example") {
  const auto s = fixtures::sky_space();
  const auto data = fixtures::sky_data(s);
  const auto l = cost_sensitive_matrix(0.1, *s);
  const auto r = solve_maxent(data, l);
  CHECK(r.lambda_star[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.lambda_star[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.maxent_value == doctest::Approx(0.029).epsilon(1e-12));
  CHECK(r.duality_gap <= 1e-6);
  CHECK(r.all_unique);
  REQUIRE(r.pstar_forecast_score);
  CHECK(*r.pstar_forecast_score == doctest::Approx(0.029).epsilon(1e-12));
  CHECK(r.ip_score_star == doctest::Approx(0.029).epsilon(1e-12));
  REQUIRE(!r.lifted_support.empty());
  CHECK(r.lifted_support[0].per_feature_action == std::vector<std::size_t>{1, 0});

  MaxentOptions mwu;
  mwu.method = MaxentMethod::mwu;
  mwu.tol = 1e-3;
  mwu.max_iter = 2'000'000;
  const auto approx = solve_maxent(data, l, mwu);
  CHECK(approx.method == MaxentMethod::mwu);
  CHECK(std::abs(approx.maxent_value - 0.029) <= 1e-3);
}

TEST_CASE("three-action instance: game value below imprecise entropy below P* score") {
  const auto s = fixtures::two_point_space();
  const auto data = fixtures::two_point_data(s);
  const auto l = fixtures::three_action_loss();
  const auto r = solve_maxent(data, l);
  CHECK(r.maxent_value == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(r.lambda_star[0] == doctest::Approx(0.5));
  CHECK(!r.all_unique);
  CHECK(!r.bayes_unique_per_x[0]);
  CHECK(imprecise_entropy(data, l) == doctest::Approx(5.0).epsilon(1e-12));
  REQUIRE(r.pstar_forecast_score);
  CHECK(*r.pstar_forecast_score == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(r.ip_score_star == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("conditional forecast of a zero-mass feature value is undefined") {
  const auto s = fixtures::sky_space();
  CHECK(!conditional_forecast(ProbVec::from({0.5, 0.5, 0.0, 0.0}), s));
  const auto f = conditional_forecast(ProbVec::from(fixtures::p1()), s);
  REQUIRE(f);
  CHECK(f->at(0).vertex(0)[1] == doctest::Approx(0.95));
  CHECK(f->at(1).vertex(0)[3] == doctest::Approx(0.05));
}

TEST_CASE("maxent certificates on random instances") {
  oracles::Gen gen(6);
  for (int t = 0; t < 200; ++t) {
    const auto s = gen.space(gen.index(2, 6), gen.index(1, 3));
    const auto data = gen.credal(s, gen.index(1, 4));
    const auto l = gen.loss(gen.index(2, 4), s->size());
    const auto r = solve_maxent(data, l);
    REQUIRE(r.duality_gap <= 1e-8);
    REQUIRE(r.value_lower <= r.maxent_value + 1e-15);
    REQUIRE(r.maxent_value <= r.value_upper + 1e-15);
    // maxent_value is the conditional entropy of P*
    REQUIRE(entropy_conditional(r.p_star, l, *s) == doctest::Approx(r.maxent_value).epsilon(1e-9));
    // the mixed lifted action concedes at most the upper value
    double wsum = 0.0;
    std::vector<double> mix(s->size(), 0.0);
    for (std::size_t j = 0; j < r.lifted_support.size(); ++j) {
      const auto g = lifted_loss(l, *s, r.lifted_support[j]);
      for (std::size_t w = 0; w < mix.size(); ++w) mix[w] += r.lifted_weights[j] * g[w];
      wsum += r.lifted_weights[j];
    }
    REQUIRE(wsum == doctest::Approx(1.0));
    REQUIRE(upper_expectation(data, Gamble(mix)) <= r.value_upper + 1e-9);
    // no single P in the hull has larger conditional entropy (vertex check)
    for (const auto& v : data.vertices()) REQUIRE(entropy_conditional(v, l, *s) <= r.maxent_value + 1e-9);
    if (r.pstar_forecast_score) REQUIRE(*r.pstar_forecast_score >= r.maxent_value - 1e-9);
  }
}

TEST_CASE("maxent matches the grid oracle") {
  oracles::Gen gen(7);
  for (int t = 0; t < 40; ++t) {
    const std::size_t j = gen.index(1, 2);
    const auto s = gen.space(gen.index(std::max<std::size_t>(j, 2), 4), j);
    const auto data = gen.credal(s, gen.index(1, 3));
    const auto l = gen.loss(gen.index(2, 3), s->size());
    const auto game = oracles::enumerate_lifted(rows_of(data), rows_of(l), s->feature_map(), j);
    const double grid = oracles::grid_maxent(game, 200);
    const auto r = solve_maxent(data, l);
    REQUIRE(std::abs(r.maxent_value - grid) <= 1e-4);
    REQUIRE(grid <= r.maxent_value + 1e-12);
  }
}

TEST_CASE("entropy chain with a trivial feature") {
  oracles::Gen gen(8);
  int unique = 0;
  for (int t = 0; t < 500; ++t) {
    const auto s = gen.space(gen.index(2, 5), 1);
    const auto data = gen.credal(s, gen.index(1, 4));
    const auto l = gen.loss(gen.index(2, 4), s->size());
    const auto r = solve_maxent(data, l);
    const double ie = imprecise_entropy(data, l);
    REQUIRE(r.maxent_value <= ie + 1e-9);
    REQUIRE(r.pstar_forecast_score);
    REQUIRE(ie <= *r.pstar_forecast_score + 1e-9);
    if (r.all_unique) {
      ++unique;
      REQUIRE(*r.pstar_forecast_score == doctest::Approx(r.maxent_value).epsilon(1e-9));
      REQUIRE(ie == doctest::Approx(r.maxent_value).epsilon(1e-9));
    }
  }
  CHECK(unique > 50);
}
