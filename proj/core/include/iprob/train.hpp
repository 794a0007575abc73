#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "iprob/dataset.hpp"
#include "iprob/losses.hpp"
#include "iprob/model.hpp"

namespace iprob {

struct TrainConfig {
  std::size_t n_outer = 2000;
  double eta = 0.1;
  std::size_t n_inner = 500;
  double lr = 1e-3;
  std::size_t batch = 512;
  bool full_batch = false;
  std::size_t grad_batches = 10;
  std::size_t erm_iters = 5000;
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;

  // Throws ConfigError on non-positive or non-finite settings.
  void validate() const;
};

// Adaptive-moment optimizer over a flat parameter vector.
class Adam {
 public:
  Adam(std::size_t n, double lr, double beta1, double beta2, double eps);
  void step(std::vector<double>& params, const std::vector<double>& grad);
  void reset();

 private:
  double lr_, beta1_, beta2_, eps_;
  std::vector<double> m_, v_;
  std::size_t t_ = 0;
};

// Mean training-surrogate loss over the given rows (all rows when empty) and
// its gradient in (weights..., bias).
double batch_loss_and_gradient(const ModelParams& m, const GroupedDataset& ds,
                               std::span<const std::size_t> rows, const ParametricBinaryLoss& loss,
                               std::vector<double>* grad);

struct ErmResult {
  ModelParams params;
  std::vector<double> loss_trace;  // mean batch loss before each step
  double final_loss = 0.0;         // full-data surrogate loss at the end
};

// erm_iters Adam steps on the stacked data from zero initialization.
ErmResult train_erm(const GroupedDataset& ds, const ParametricBinaryLoss& loss,
                    const TrainConfig& cfg);

struct DroRound {
  std::size_t iter = 0;
  double weighted_loss = 0.0;
  std::vector<double> group_losses;
  std::vector<double> lambda;  // after this round's update
};

struct DroResult {
  ModelParams params;
  std::vector<double> lambda;       // final weights
  std::vector<DroRound> trace;      // one entry per outer round
  std::vector<double> final_group_losses;  // full-data surrogate losses at the end
};

// Outer exponentiated-gradient ascent on the group weights, inner Adam
// minimization of the weighted loss.  Parameters persist across rounds, the
// optimizer state does not.
DroResult train_dro(const GroupedDataset& ds, const ParametricBinaryLoss& loss,
                    const TrainConfig& cfg);

// lambda_g proportional to lambda_g exp(eta L_g), floored at the smallest
// normal double.
std::vector<double> exponentiated_update(const std::vector<double>& lambda,
                                         const std::vector<double>& losses, double eta);

// One ERM per group.
std::vector<ModelParams> fit_gbr(const GroupedDataset& ds, const ParametricBinaryLoss& loss,
                                 const TrainConfig& cfg);

}  // namespace iprob
