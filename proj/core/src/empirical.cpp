#include "iprob/empirical.hpp"

#include <algorithm>
#include <limits>

#include "iprob/error.hpp"

namespace iprob {

std::vector<RowInterval> row_intervals(const std::vector<std::vector<double>>& member_probs) {
  std::vector<RowInterval> out;
  out.reserve(member_probs.size());
  for (const auto& m : member_probs) {
    if (m.empty()) throw DomainError("row forecast without members");
    const auto [lo, hi] = std::minmax_element(m.begin(), m.end());
    if (*lo < 0.0 || *hi > 1.0) throw DomainError("forecast probability outside [0, 1]");
    out.push_back({*lo, *hi});
  }
  return out;
}

namespace {

double upper_binary(const RowInterval& q, double z0, double z1) {
  const double a = (1.0 - q.lo) * z0 + q.lo * z1;
  const double b = (1.0 - q.hi) * z0 + q.hi * z1;
  return std::max(a, b);
}

void check_sizes(const GroupedDataset& ds, std::size_t n) {
  if (ds.size() != n) throw DimensionError("per-row values do not match the dataset");
  ds.require_nonempty_groups();
}

}  // namespace

EmpiricalDecisions empirical_decisions(const std::vector<RowInterval>& q,
                                       const std::vector<int>& labels, const LossMatrix& loss,
                                       double tie_tol) {
  if (loss.k() != 2) throw DimensionError("binary evaluation needs a 2-column loss");
  if (q.size() != labels.size()) throw DimensionError("forecast and label counts differ");
  EmpiricalDecisions d;
  d.action.resize(q.size());
  d.score.resize(q.size());
  d.price.resize(q.size());
  std::vector<double> v(loss.action_count());
  for (std::size_t r = 0; r < q.size(); ++r) {
    for (std::size_t a = 0; a < v.size(); ++a) v[a] = upper_binary(q[r], loss(a, 0), loss(a, 1));
    const double best = *std::min_element(v.begin(), v.end());
    std::size_t a = 0;
    while (v[a] > best + tie_tol) ++a;
    d.action[r] = a;
    d.score[r] = loss(a, static_cast<std::size_t>(labels[r]));
    d.price[r] = v[a];
  }
  return d;
}

double empirical_upper(const GroupedDataset& ds, const std::vector<double>& z) {
  check_sizes(ds, z.size());
  std::vector<double> sum(ds.group_count, 0.0), n(ds.group_count, 0.0);
  for (std::size_t r = 0; r < z.size(); ++r) {
    sum[ds.groups[r]] += z[r];
    n[ds.groups[r]] += 1.0;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < sum.size(); ++g) best = std::max(best, sum[g] / n[g]);
  return best;
}

std::optional<double> empirical_gbr_upper(const GroupedDataset& ds, const std::vector<double>& z,
                                          const std::vector<bool>& block) {
  check_sizes(ds, z.size());
  if (block.size() != z.size()) throw DimensionError("block mask does not match the dataset");
  std::vector<double> sum(ds.group_count, 0.0), n(ds.group_count, 0.0);
  for (std::size_t r = 0; r < z.size(); ++r) {
    if (!block[r]) continue;
    sum[ds.groups[r]] += z[r];
    n[ds.groups[r]] += 1.0;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < sum.size(); ++g) {
    if (n[g] == 0.0) return std::nullopt;
    best = std::max(best, sum[g] / n[g]);
  }
  return best;
}

double empirical_ip_score(const GroupedDataset& ds, const std::vector<RowInterval>& q,
                          const LossMatrix& loss) {
  return empirical_upper(ds, empirical_decisions(q, ds.labels, loss).score);
}

EmpiricalCalibration empirical_calibration(const GroupedDataset& ds,
                                           const std::vector<RowInterval>& q,
                                           const LossMatrix& loss) {
  const auto d = empirical_decisions(q, ds.labels, loss);
  EmpiricalCalibration out;
  std::vector<double> resid(ds.size());
  for (std::size_t r = 0; r < resid.size(); ++r) resid[r] = d.score[r] - d.price[r];
  out.residual_no_groups = empirical_upper(ds, resid);
  for (std::size_t a = 0; a < loss.action_count(); ++a) {
    EmpiricalActionBlock b;
    b.action = a;
    std::vector<bool> mask(ds.size());
    std::vector<double> masked(ds.size(), 0.0);
    for (std::size_t r = 0; r < ds.size(); ++r) {
      mask[r] = d.action[r] == a;
      if (mask[r]) {
        ++b.rows;
        masked[r] = resid[r];
      }
    }
    if (b.rows > 0) {
      b.residual = empirical_upper(ds, masked);
      b.diagnostic_II = empirical_gbr_upper(ds, resid, mask);
    }
    out.actions.push_back(b);
  }
  return out;
}

}  // namespace iprob
