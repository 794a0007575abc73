#include <benchmark/benchmark.h>

#include "forecast_instances.hpp"
#include "iprob/calibration.hpp"
#include "iprob/decisions.hpp"
#include "iprob/entropy.hpp"
#include "iprob/gbr.hpp"
#include "iprob/nslp.hpp"
#include "iprob/train.hpp"
#include "random_instances.hpp"

using namespace iprob;

static void BM_UpperExpectation(benchmark::State& state) {
  oracles::Gen gen(1);
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto s = gen.space(k, 1);
  const auto c = gen.credal(s, static_cast<std::size_t>(state.range(1)));
  const Gamble z(gen.vec(k));
  for (auto _ : state) benchmark::DoNotOptimize(upper_expectation(c, z));
}
BENCHMARK(BM_UpperExpectation)->Args({4, 2})->Args({16, 8})->Args({64, 32});

static void BM_MinmaxAction(benchmark::State& state) {
  oracles::Gen gen(2);
  const auto s = gen.space(8, 1);
  const auto c = gen.credal(s, 8);
  const auto l = gen.loss(static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(minmax_action(c, l));
}
BENCHMARK(BM_MinmaxAction)->Arg(2)->Arg(8)->Arg(32);

static void BM_SolveMaxent(benchmark::State& state) {
  oracles::Gen gen(3);
  const auto j = static_cast<std::size_t>(state.range(0));
  const auto s = gen.space(2 * j, j);
  const auto c = gen.credal(s, static_cast<std::size_t>(state.range(1)), 0.05);
  const auto l = gen.loss(2, 2 * j);
  for (auto _ : state) benchmark::DoNotOptimize(solve_maxent(c, l).maxent_value);
}
BENCHMARK(BM_SolveMaxent)->Args({1, 2})->Args({2, 3})->Args({4, 4})->Args({8, 4});

static void BM_GbrForecast(benchmark::State& state) {
  oracles::Gen gen(4);
  const auto j = static_cast<std::size_t>(state.range(0));
  const auto s = gen.space(4 * j, j);
  const auto c = gen.credal(s, 6, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(gbr_forecast(c));
}
BENCHMARK(BM_GbrForecast)->Arg(1)->Arg(4)->Arg(16);

static void BM_CalibrationResidual(benchmark::State& state) {
  oracles::Gen gen(5);
  const auto j = static_cast<std::size_t>(state.range(0));
  const auto s = gen.space(4 * j, j);
  const auto c = gen.credal(s, 4, 0.01);
  const auto q = oracles::random_forecast(gen, s, 3);
  const auto l = gen.loss(3, 4 * j);
  for (auto _ : state) benchmark::DoNotOptimize(action_calibration(q, l, c).blocks.size());
}
BENCHMARK(BM_CalibrationResidual)->Arg(1)->Arg(4)->Arg(16);

static GroupedDataset sky_dataset(std::size_t n) {
  const auto space = make_space(OutcomeSpace::product({"cloudy", "sunny"}, {0.0, 1.0}));
  const auto c = CredalSet::from_rows(space, {{0.02, 0.38, 0.57, 0.03}, {0.135, 0.765, 0.085, 0.015}});
  return to_dataset(sample_nslp({c, Selection::cyclic(), n, 9}), *space);
}

static void BM_BatchGradient(benchmark::State& state) {
  const auto ds = sky_dataset(static_cast<std::size_t>(state.range(0)));
  const auto m = ModelParams::zeros(ds.dim());
  const auto loss = ParametricBinaryLoss::winkler(0.1);
  std::vector<double> grad;
  for (auto _ : state) benchmark::DoNotOptimize(batch_loss_and_gradient(m, ds, {}, loss, &grad));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BatchGradient)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

static void BM_DroRounds(benchmark::State& state) {
  const auto ds = sky_dataset(20000);
  TrainConfig cfg;
  cfg.n_outer = static_cast<std::size_t>(state.range(0));
  cfg.n_inner = 100;
  for (auto _ : state) benchmark::DoNotOptimize(train_dro(ds, ParametricBinaryLoss::log_loss(), cfg).lambda);
}
BENCHMARK(BM_DroRounds)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
