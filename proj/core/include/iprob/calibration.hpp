#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "iprob/credal_set.hpp"
#include "iprob/decisions.hpp"
#include "iprob/gbr.hpp"
#include "iprob/losses.hpp"

namespace iprob {

inline constexpr double kExactCalibrationTol = 1e-9;
inline constexpr double kEmpiricalCalibrationTol = 1e-3;

struct BlockResult {
  std::string label;
  std::vector<std::size_t> outcomes;
  std::optional<std::size_t> action;  // set for action-induced blocks
  bool defined = true;                // false for empty action blocks
  double residual = 0.0;
  std::optional<double> diagnostic_II;  // nullopt when the block has zero lower probability
  bool is_calibrated = false;
  bool is_subcalibrated = false;
};

struct CalibrationReport {
  std::vector<BlockResult> blocks;
  double tolerance = kExactCalibrationTol;
  std::string loss_id;
  std::string forecast_id;
  std::string data_model_id;

  // Every defined block meets the condition; undefined blocks fail.
  bool calibrated() const;
  bool subcalibrated() const;
  double max_residual() const;
};

// omega -> upper expectation under Q(X(omega)) of the full score gamble.
Gamble price_gamble(const Forecast& q, const LossMatrix& l);
double entropy_price(const Forecast& q, const LossMatrix& l, std::size_t omega);

// Per block B: upper expectation under data of chi_B (S - price).  Without a
// partition the single block is Omega.
CalibrationReport calibration_residual(const Forecast& q, const LossMatrix& l,
                                       const CredalSet& data,
                                       const std::optional<Partition>& partition = std::nullopt,
                                       double tolerance = kExactCalibrationTol);

struct ActionPartition {
  Partition partition;
  std::vector<std::size_t> block_action;   // action of each block
  std::vector<std::size_t> empty_actions;  // recommended nowhere; dropped
};

// Blocks {omega : a*_{Q(omega)} = a}.
ActionPartition action_partition(const Forecast& q, const LossMatrix& l);

// upper(chi_{a* = a} (l_a - upper_{Q(omega)}(l_a))).  Zero for empty blocks.
double diagnostic_I(const Forecast& q, const LossMatrix& l, const CredalSet& data,
                    std::size_t action);
// GBR of l_a - upper_{Q(omega)}(l_a) given a* = a; nullopt when that block is
// empty or has zero lower probability.
std::optional<double> diagnostic_II(const Forecast& q, const LossMatrix& l, const CredalSet& data,
                                    std::size_t action);

// Report over the action-induced partition, one block per action including
// empty ones (marked undefined).  Residuals follow calibration_residual;
// diagnostic_II follows the per-action definition above.
CalibrationReport action_calibration(const Forecast& q, const LossMatrix& l,
                                     const CredalSet& data,
                                     double tolerance = kExactCalibrationTol);

// Binary forecast [mu - width, mu + width] with cost-sensitive loss c_loss:
// l(a, omega) - MG(omega), MG = b (omega - mu) - |b| width, b = l(a,1) - l(a,0).
// Throws ConsistencyError if the value depends on omega.
double marginal_gamble_residual(double mu, double c_width, double c_loss, int action, int outcome);

}  // namespace iprob
