#include "iprob/model.hpp"

#include <algorithm>
#include <cmath>

#include "iprob/error.hpp"

namespace iprob {

double sigmoid(double z) noexcept {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double logit(const ModelParams& m, std::span<const double> x) {
  if (x.size() != m.weights.size()) {
    throw DimensionError("model expects " + std::to_string(m.weights.size()) + " features, got " +
                         std::to_string(x.size()));
  }
  double z = m.bias;
  for (std::size_t j = 0; j < x.size(); ++j) z += m.weights[j] * x[j];
  return z;
}

double predict(const ModelParams& m, std::span<const double> x) {
  return std::clamp(sigmoid(logit(m, x)), kLogClamp, 1.0 - kLogClamp);
}

LossAndSlope loss_at_logit(const ParametricBinaryLoss& loss, double z, double y) {
  if (loss.kind == LossKind::log) {
    // softplus(z) - y z
    const double sp = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    return {sp - y * z, sigmoid(z) - y};
  }
  const double a = sigmoid(z);
  return {loss.train_value(a, y), loss.train_gradient(a, y) * a * (1.0 - a)};
}

double TrainedModel::predict_raw(std::span<const double> raw) const {
  std::vector<double> x = interactions ? interaction_row(raw) : std::vector<double>(raw.begin(), raw.end());
  if (standardizer.dim() != 0) standardizer.apply_row(x, x);
  return predict(params, x);
}

std::vector<std::vector<double>> member_predictions(const std::vector<TrainedModel>& members,
                                                    const GroupedDataset& raw) {
  if (members.empty()) throw DomainError("forecast without member models");
  std::vector<std::vector<double>> out(raw.size(), std::vector<double>(members.size()));
  for (std::size_t r = 0; r < raw.size(); ++r) {
    for (std::size_t m = 0; m < members.size(); ++m) out[r][m] = members[m].predict_raw(raw.row(r));
  }
  return out;
}

}  // namespace iprob
