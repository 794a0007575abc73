#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "iprob/dataset.hpp"
#include "iprob/losses.hpp"

namespace iprob {

// q(x) = sigmoid(<w, x> + b).
struct ModelParams {
  std::vector<double> weights;
  double bias = 0.0;

  static ModelParams zeros(std::size_t dim) { return {std::vector<double>(dim, 0.0), 0.0}; }
  std::size_t dim() const noexcept { return weights.size(); }
  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

double sigmoid(double z) noexcept;

double logit(const ModelParams& m, std::span<const double> x);
// Clamped to [1e-12, 1 - 1e-12].
double predict(const ModelParams& m, std::span<const double> x);

struct LossAndSlope {
  double loss;
  double dz;  // derivative in the logit
};

// Training surrogate of the loss at logit z and its logit derivative.  Log-loss
// is evaluated from the logit directly (softplus form).
LossAndSlope loss_at_logit(const ParametricBinaryLoss& loss, double z, double y);

// A linear-sigmoid forecaster together with the feature map it expects.
struct TrainedModel {
  ModelParams params;
  Standardizer standardizer;
  bool interactions = false;

  // Raw feature row -> forecast probability.
  double predict_raw(std::span<const double> raw) const;
};

// Forecast of each row by every member model: the member set is the credal
// set of the forecast at that row.
std::vector<std::vector<double>> member_predictions(const std::vector<TrainedModel>& members,
                                                    const GroupedDataset& raw);

}  // namespace iprob
