#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "iprob/credal_set.hpp"
#include "iprob/outcome_space.hpp"

namespace iprob {

// Probabilities are clamped to [kLogClamp, 1 - kLogClamp] before taking logs.
inline constexpr double kLogClamp = 1e-12;
inline constexpr double kDefaultSmoothF = 1000.0;

// |A| x k table of losses l(a, omega).  Actions are ordered by row index; that
// order is the tie-break order of every decision rule in this library.
class LossMatrix {
 public:
  LossMatrix(std::vector<std::vector<double>> entries, std::vector<std::string> action_labels = {});

  std::size_t action_count() const noexcept { return rows_.size(); }
  std::size_t k() const noexcept { return rows_.front().size(); }
  const Gamble& row(std::size_t a) const { return rows_.at(a); }
  double operator()(std::size_t a, std::size_t omega) const { return rows_.at(a)[omega]; }
  const std::string& action_label(std::size_t a) const { return labels_.at(a); }
  const std::vector<std::string>& action_labels() const noexcept { return labels_; }

  // alpha * l + beta.
  LossMatrix affine(double alpha, double beta) const;

 private:
  std::vector<Gamble> rows_;
  std::vector<std::string> labels_;
};

enum class LossKind { log, brier, cost_sensitive, winkler };

// Binary-label loss family evaluated at a continuous action a in [0, 1].
struct ParametricBinaryLoss {
  LossKind kind = LossKind::log;
  double c = 0.5;                     // cost_sensitive and winkler only
  double smooth_f = kDefaultSmoothF;  // winkler only

  static ParametricBinaryLoss log_loss() { return {LossKind::log, 0.5, kDefaultSmoothF}; }
  static ParametricBinaryLoss brier() { return {LossKind::brier, 0.5, kDefaultSmoothF}; }
  static ParametricBinaryLoss cost_sensitive(double c);
  static ParametricBinaryLoss winkler(double c, double smooth_f = kDefaultSmoothF);

  // Throws DomainError for c outside (0, 1) or smooth_f <= 0.
  void validate() const;

  // Exact loss; winkler is unsmoothed here.
  double value(double a, double y) const;
  // Training surrogate: equal to value() except that winkler is smoothed.
  double train_value(double a, double y) const;
  // d train_value / da.
  double train_gradient(double a, double y) const;

  // Short identifier such as "winkler(0.1)".
  std::string id() const;
};

std::string to_string(LossKind kind);
LossKind loss_kind_from_string(const std::string& s);

// 2 x k matrix with l(0, Y=1) = 1 - c, l(1, Y=0) = c and zero elsewhere.
// Throws DomainError if the space has no binary label map.
LossMatrix cost_sensitive_matrix(double c, const OutcomeSpace& space);

// Asymmetric Brier-based loss with entropy peak at c.  At a = c the unsmoothed
// value is 1 for both labels.
double winkler_loss(double c, double a, double y, bool smoothed,
                    double smooth_f = kDefaultSmoothF);
// Derivative in a of the smoothed loss.
double winkler_gradient(double c, double a, double y, double smooth_f = kDefaultSmoothF);

// Actions a_j = j / (grid_n - 1); entries loss.value(a_j, Y(omega)).
LossMatrix discretize_action_space(const ParametricBinaryLoss& loss, std::size_t grid_n,
                                   const OutcomeSpace& space);

}  // namespace iprob
