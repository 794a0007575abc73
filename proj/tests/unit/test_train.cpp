#include <cmath>
#include <limits>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "iprob/error.hpp"
#include "iprob/model.hpp"
#include "iprob/nslp.hpp"
#include "iprob/train.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

using namespace iprob;

namespace {

std::vector<ParametricBinaryLoss> all_losses() {
  return {ParametricBinaryLoss::log_loss(), ParametricBinaryLoss::brier(),
          ParametricBinaryLoss::cost_sensitive(0.3), ParametricBinaryLoss::winkler(0.1),
          ParametricBinaryLoss::winkler(0.7, 50.0)};
}

GroupedDataset coin(std::size_t n, double rate, std::size_t groups = 1) {
  GroupedDataset ds;
  const std::size_t pos = static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));
  for (std::size_t i = 0; i < n; ++i) ds.push_back({}, i < pos ? 1 : 0, i % groups);
  return ds;
}

GroupedDataset random_rows(oracles::Gen& gen, std::size_t n, std::size_t d) {
  GroupedDataset ds;
  for (std::size_t j = 0; j < d; ++j) ds.feature_names.push_back("x" + std::to_string(j));
  for (std::size_t i = 0; i < n; ++i) ds.push_back(gen.vec(d, -2.0, 2.0), gen.uniform() < 0.4, 0);
  return ds;
}

TrainConfig quick() {
  TrainConfig cfg;
  cfg.lr = 1e-2;
  cfg.erm_iters = 2000;
  cfg.n_outer = 20;
  cfg.n_inner = 100;
  cfg.batch = 64;
  return cfg;
}

}  // namespace

TEST_CASE("prediction basics") {
  const ModelParams zero = ModelParams::zeros(2);
  const std::vector<double> x{1.0, -3.0};
  CHECK(predict(zero, x) == 0.5);
  ModelParams big = zero;
  big.bias = 50.0;
  CHECK(predict(big, x) >= 1.0 - 1e-12);
  CHECK(predict(big, x) < 1.0);
  big.bias = -50.0;
  CHECK(predict(big, x) == 1e-12);
  const std::vector<double> wrong{1.0};
  CHECK_THROWS_AS(predict(zero, wrong), DimensionError);
  CHECK(sigmoid(-800.0) == 0.0);
  CHECK(sigmoid(800.0) == 1.0);
}

TEST_CASE("logit-level gradients match finite differences") {
  oracles::Gen gen(51);
  for (const auto& loss : all_losses()) {
    for (int t = 0; t < 400; ++t) {
      const double z = gen.uniform(-6.0, 6.0);
      const double y = gen.uniform() < 0.5 ? 0.0 : 1.0;
      if (loss.kind == LossKind::winkler && std::abs(sigmoid(z) - loss.c) < 0.02) continue;
      const double g = loss_at_logit(loss, z, y).dz;
      const double fd = oracles::central_difference([&](double v) { return loss_at_logit(loss, v, y).loss; }, z);
      REQUIRE(std::abs(g - fd) <= 1e-4 * std::max(1.0, std::abs(g)));
    }
  }
  // the log-loss form stays finite far out
  CHECK(std::isfinite(loss_at_logit(ParametricBinaryLoss::log_loss(), 800.0, 0.0).loss));
  CHECK(loss_at_logit(ParametricBinaryLoss::log_loss(), 800.0, 0.0).loss == doctest::Approx(800.0));
}

TEST_CASE("batch gradients match finite differences in every parameter") {
  oracles::Gen gen(52);
  const auto ds = random_rows(gen, 64, 3);
  for (const auto& loss : all_losses()) {
    ModelParams m{gen.vec(3, -0.5, 0.5), gen.uniform(-0.5, 0.5)};
    std::vector<double> grad;
    batch_loss_and_gradient(m, ds, {}, loss, &grad);
    REQUIRE(grad.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
      auto f = [&](double v) {
        ModelParams p = m;
        if (j < 3) p.weights[j] = v; else p.bias = v;
        return batch_loss_and_gradient(p, ds, {}, loss, nullptr);
      };
      const double x0 = j < 3 ? m.weights[j] : m.bias;
      const double fd = oracles::central_difference(f, x0);
      CHECK(std::abs(grad[j] - fd) <= 1e-4 * std::max(1.0, std::abs(grad[j])));
    }
  }
}

TEST_CASE("ERM on separable data") {
  GroupedDataset ds;
  ds.feature_names = {"x"};
  for (int i = -20; i <= 20; ++i) {
    if (i == 0) continue;
    const std::vector<double> x{i / 10.0};
    ds.push_back(x, i > 0, 0);
  }
  TrainConfig cfg = quick();
  cfg.full_batch = true;
  const auto r = train_erm(ds, ParametricBinaryLoss::log_loss(), cfg);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) correct += (predict(r.params, ds.row(i)) > 0.5) == (ds.labels[i] == 1);
  CHECK(correct == ds.size());
  // smoothed over windows of 100 steps the loss keeps falling
  for (std::size_t w = 100; w + 100 <= r.loss_trace.size(); w += 100) {
    const double prev = std::accumulate(r.loss_trace.begin() + (w - 100), r.loss_trace.begin() + w, 0.0);
    const double next = std::accumulate(r.loss_trace.begin() + w, r.loss_trace.begin() + (w + 100), 0.0);
    REQUIRE(next < prev);
  }
}

TEST_CASE("ERM recovers the base rate under proper losses") {
  TrainConfig cfg = quick();
  const auto balanced = coin(1000, 0.5);
  for (const auto& loss : {ParametricBinaryLoss::brier(), ParametricBinaryLoss::winkler(0.3)}) {
    const auto r = train_erm(balanced, loss, cfg);
    CHECK(std::abs(predict(r.params, {}) - 0.5) <= 0.02);
  }
  const auto skew = coin(1000, 0.3);
  const auto brier = train_erm(skew, ParametricBinaryLoss::brier(), cfg);
  CHECK(std::abs(predict(brier.params, {}) - 0.3) <= 0.01);
  const auto wk = train_erm(skew, ParametricBinaryLoss::winkler(0.6), cfg);
  CHECK(std::abs(predict(wk.params, {}) - 0.3) <= 0.02);
  const auto lg = train_erm(skew, ParametricBinaryLoss::log_loss(), cfg);
  CHECK(std::abs(predict(lg.params, {}) - 0.3) <= 0.01);
}

TEST_CASE("training is deterministic under the seed") {
  oracles::Gen gen(53);
  const auto ds = random_rows(gen, 300, 2);
  TrainConfig cfg = quick();
  cfg.seed = 5;
  const auto a = train_erm(ds, ParametricBinaryLoss::winkler(0.3), cfg);
  const auto b = train_erm(ds, ParametricBinaryLoss::winkler(0.3), cfg);
  CHECK(a.params == b.params);
  cfg.seed = 6;
  const auto c = train_erm(ds, ParametricBinaryLoss::winkler(0.3), cfg);
  CHECK(!(a.params == c.params));
}

TEST_CASE("configuration and numeric failures") {
  TrainConfig bad;
  bad.eta = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = TrainConfig{};
  bad.batch = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = TrainConfig{};
  bad.lr = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  GroupedDataset ds;
  ds.feature_names = {"x"};
  const std::vector<double> x{std::numeric_limits<double>::infinity()};
  ds.push_back(x, 1, 0);
  CHECK_THROWS_AS(train_erm(ds, ParametricBinaryLoss::log_loss(), quick()), NumericError);
  CHECK_THROWS_AS(train_dro(coin(10, 0.5, 1).subset(std::vector<std::size_t>{}), ParametricBinaryLoss::brier(), quick()),
                  DomainError);
}

TEST_CASE("exponentiated update") {
  const std::vector<double> lam{0.25, 0.25, 0.5};
  const std::vector<double> loss{1.0, 2.0, 0.5};
  const auto next = exponentiated_update(lam, loss, 0.1);
  CHECK(std::accumulate(next.begin(), next.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(next[1] > lam[1]);
  CHECK(next[2] < lam[2]);
  std::vector<double> shifted = loss;
  for (double& v : shifted) v += 37.0;
  const auto same = exponentiated_update(lam, shifted, 0.1);
  for (std::size_t g = 0; g < 3; ++g) CHECK(same[g] == doctest::Approx(next[g]).epsilon(1e-12));
  const auto extreme = exponentiated_update(lam, {1e6, 0.0, 0.0}, 1.0);
  for (double v : extreme) CHECK(v > 0.0);
  CHECK(extreme[0] == doctest::Approx(1.0));
}

TEST_CASE("DRO with one group matches ERM") {
  oracles::Gen gen(54);
  const auto ds = random_rows(gen, 200, 2);
  TrainConfig cfg = quick();
  cfg.full_batch = true;
  cfg.n_outer = 20;
  cfg.n_inner = 100;
  cfg.erm_iters = 2000;
  const auto erm = train_erm(ds, ParametricBinaryLoss::log_loss(), cfg);
  const auto dro = train_dro(ds, ParametricBinaryLoss::log_loss(), cfg);
  CHECK(dro.lambda == std::vector<double>{1.0});
  CHECK(std::abs(dro.final_group_losses[0] - erm.final_loss) <= 1e-3);
  CHECK(dro.trace.size() == 20);
}

TEST_CASE("DRO keeps uniform weights on identical groups") {
  oracles::Gen gen(55);
  const auto base = random_rows(gen, 100, 2);
  GroupedDataset ds = base;
  for (std::size_t i = 0; i < base.size(); ++i) ds.push_back(base.row(i), base.labels[i], 1);
  TrainConfig cfg = quick();
  const auto r = train_dro(ds, ParametricBinaryLoss::winkler(0.3), cfg);
  for (const auto& round : r.trace) {
    double s = 0.0;
    for (double v : round.lambda) {
      REQUIRE(v > 0.0);
      REQUIRE(std::abs(v - 0.5) <= 0.1);
      s += v;
    }
    REQUIRE(s == doctest::Approx(1.0).epsilon(1e-14));
  }
  const auto models = fit_gbr(ds, ParametricBinaryLoss::log_loss(), cfg);
  REQUIRE(models.size() == 2);
  double dist = std::abs(models[0].bias - models[1].bias);
  for (std::size_t j = 0; j < 2; ++j) dist += std::abs(models[0].weights[j] - models[1].weights[j]);
  CHECK(dist < 1e-2);
}

TEST_CASE("per-group fits recover the sky conditionals") {
  const auto s = fixtures::sky_space();
  const auto sample = sample_nslp({fixtures::sky_data(s), Selection::cyclic(), 100000, 17});
  const auto ds = to_dataset(sample, *s);
  TrainConfig cfg;
  const auto models = fit_gbr(ds, ParametricBinaryLoss::log_loss(), cfg);
  const std::vector<double> cloudy{1.0, 0.0};
  const std::vector<double> sunny{0.0, 1.0};
  CHECK(std::abs(predict(models[0], cloudy) - 0.95) <= 0.02);
  CHECK(std::abs(predict(models[1], cloudy) - 0.85) <= 0.02);
  CHECK(std::abs(predict(models[0], sunny) - 0.05) <= 0.02);
  CHECK(std::abs(predict(models[1], sunny) - 0.15) <= 0.02);
}

TEST_CASE("trained model wrapper applies interactions and scaling") {
  TrainedModel m;
  m.params = {{1.0, 0.0, 2.0}, -0.5};
  m.interactions = true;
  m.standardizer = Standardizer({1.0, 0.0, 0.0}, {2.0, 1.0, 1.0});
  const std::vector<double> raw{3.0, 0.5};
  // (3, 0.5, 1.5) -> (1, 0.5, 1.5); logit 1 + 3 - 0.5
  CHECK(m.predict_raw(raw) == doctest::Approx(sigmoid(3.5)));
  GroupedDataset ds;
  ds.feature_names = {"a", "b"};
  ds.push_back(raw, 1, 0);
  const auto probs = member_predictions({m, m}, ds);
  CHECK(probs.size() == 1);
  CHECK(probs[0].size() == 2);
  CHECK_THROWS_AS(member_predictions({}, ds), DomainError);
}
