#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "iprob/dataset.hpp"
#include "iprob/losses.hpp"

namespace iprob {

// Evaluation of forecasts on a grouped dataset with binary labels.  The data
// model is the set of per-group empirical distributions; each row's forecast is
// a set of probabilities of label 1 that only concerns that row's features.
// Upper expectations under such a forecast are attained at its extreme members,
// so only [q_lo, q_hi] matters.

struct RowInterval {
  double lo;
  double hi;
};

std::vector<RowInterval> row_intervals(const std::vector<std::vector<double>>& member_probs);

struct EmpiricalDecisions {
  std::vector<std::size_t> action;  // MinMax action per row
  std::vector<double> score;        // l(a*, y)
  std::vector<double> price;        // worst-case value of a* under the row's forecast
};

// loss must have two columns ordered (y = 0, y = 1).
EmpiricalDecisions empirical_decisions(const std::vector<RowInterval>& q,
                                       const std::vector<int>& labels, const LossMatrix& loss,
                                       double tie_tol = 1e-10);

// max over groups of the group mean of z.
double empirical_upper(const GroupedDataset& ds, const std::vector<double>& z);
// max over groups of the mean of z over the group's rows in the block; nullopt
// if some group has no rows there (zero lower probability).
std::optional<double> empirical_gbr_upper(const GroupedDataset& ds, const std::vector<double>& z,
                                          const std::vector<bool>& block);

double empirical_ip_score(const GroupedDataset& ds, const std::vector<RowInterval>& q,
                          const LossMatrix& loss);

struct EmpiricalActionBlock {
  std::size_t action = 0;
  std::size_t rows = 0;
  double residual = 0.0;                // upper(chi_{a*=a} (l_a - price))
  std::optional<double> diagnostic_II;  // GBR of the same given a* = a
};

struct EmpiricalCalibration {
  double residual_no_groups = 0.0;
  std::vector<EmpiricalActionBlock> actions;  // one per action
};

EmpiricalCalibration empirical_calibration(const GroupedDataset& ds,
                                           const std::vector<RowInterval>& q,
                                           const LossMatrix& loss);

}  // namespace iprob
