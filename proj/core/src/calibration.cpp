#include "iprob/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iprob/error.hpp"

namespace iprob {

bool CalibrationReport::calibrated() const {
  return std::all_of(blocks.begin(), blocks.end(),
                     [](const BlockResult& b) { return b.defined && b.is_calibrated; });
}

bool CalibrationReport::subcalibrated() const {
  return std::all_of(blocks.begin(), blocks.end(),
                     [](const BlockResult& b) { return b.defined && b.is_subcalibrated; });
}

double CalibrationReport::max_residual() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& b : blocks) {
    if (b.defined) m = std::max(m, b.residual);
  }
  return m;
}

Gamble price_gamble(const Forecast& q, const LossMatrix& l) {
  const Gamble s = score_gamble(q, l);
  const auto& space = q.space();
  std::vector<double> per_x(space.feature_count());
  for (std::size_t x = 0; x < per_x.size(); ++x) per_x[x] = upper_expectation(q.at(x), s);
  std::vector<double> v(space.size());
  for (std::size_t w = 0; w < v.size(); ++w) v[w] = per_x[space.feature_of(w)];
  return Gamble(std::move(v));
}

double entropy_price(const Forecast& q, const LossMatrix& l, std::size_t omega) {
  if (omega >= q.space().size()) throw DomainError("outcome index out of range");
  return upper_expectation(q.for_outcome(omega), score_gamble(q, l));
}

namespace {

void check_inputs(const Forecast& q, const CredalSet& data) {
  if (!same_space(q.space_ptr(), data.space_ptr())) {
    throw DimensionError("forecast and data model on different outcome spaces");
  }
}

std::optional<double> safe_gbr(const CredalSet& data, const Gamble& z,
                               const std::vector<std::size_t>& block) {
  if (block.empty() || !(lower_probability(data, block) > kGbrMinLowerProb)) return std::nullopt;
  return gbr_upper(data, z, block);
}

void flag(BlockResult& b, double tol) {
  b.is_calibrated = b.defined && std::abs(b.residual) <= tol;
  b.is_subcalibrated = b.defined && b.residual <= tol;
}

// l_a - upper_{Q(omega)}(l_a)
Gamble action_residual_gamble(const Forecast& q, const LossMatrix& l, std::size_t a) {
  const auto& space = q.space();
  const Gamble& row = l.row(a);
  std::vector<double> v(space.size());
  for (std::size_t w = 0; w < v.size(); ++w) v[w] = row[w] - upper_expectation(q.for_outcome(w), row);
  return Gamble(std::move(v));
}

std::vector<std::size_t> action_block(const Forecast& q, const LossMatrix& l, std::size_t a) {
  const auto actions = recommended_actions(q, l);
  std::vector<std::size_t> block;
  for (std::size_t w = 0; w < q.space().size(); ++w) {
    if (actions[q.space().feature_of(w)].action_index == a) block.push_back(w);
  }
  return block;
}

}  // namespace

CalibrationReport calibration_residual(const Forecast& q, const LossMatrix& l,
                                       const CredalSet& data,
                                       const std::optional<Partition>& partition,
                                       double tolerance) {
  check_inputs(q, data);
  const Partition part = partition ? *partition : Partition::trivial(data.k());
  if (part.k() != data.k()) throw DimensionError("partition on a different outcome space");
  const Gamble resid = score_gamble(q, l) - price_gamble(q, l);
  CalibrationReport rep;
  rep.tolerance = tolerance;
  for (std::size_t b = 0; b < part.size(); ++b) {
    BlockResult br;
    br.label = part.label(b);
    br.outcomes = part.block(b);
    br.residual = upper_expectation(data, Gamble::indicator(data.k(), br.outcomes) * resid);
    br.diagnostic_II = safe_gbr(data, resid, br.outcomes);
    flag(br, tolerance);
    rep.blocks.push_back(std::move(br));
  }
  return rep;
}

ActionPartition action_partition(const Forecast& q, const LossMatrix& l) {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::string> labels;
  std::vector<std::size_t> block_action;
  std::vector<std::size_t> empty;
  for (std::size_t a = 0; a < l.action_count(); ++a) {
    auto b = action_block(q, l, a);
    if (b.empty()) {
      empty.push_back(a);
      continue;
    }
    blocks.push_back(std::move(b));
    labels.push_back(l.action_label(a));
    block_action.push_back(a);
  }
  return {Partition(q.space().size(), std::move(blocks), std::move(labels)),
          std::move(block_action), std::move(empty)};
}

double diagnostic_I(const Forecast& q, const LossMatrix& l, const CredalSet& data,
                    std::size_t action) {
  check_inputs(q, data);
  const auto block = action_block(q, l, action);
  if (block.empty()) return 0.0;
  return upper_expectation(
      data, Gamble::indicator(data.k(), block) * action_residual_gamble(q, l, action));
}

std::optional<double> diagnostic_II(const Forecast& q, const LossMatrix& l, const CredalSet& data,
                                    std::size_t action) {
  check_inputs(q, data);
  if (action >= l.action_count()) throw DomainError("action index out of range");
  return safe_gbr(data, action_residual_gamble(q, l, action), action_block(q, l, action));
}

CalibrationReport action_calibration(const Forecast& q, const LossMatrix& l,
                                     const CredalSet& data, double tolerance) {
  check_inputs(q, data);
  const Gamble resid = score_gamble(q, l) - price_gamble(q, l);
  CalibrationReport rep;
  rep.tolerance = tolerance;
  for (std::size_t a = 0; a < l.action_count(); ++a) {
    BlockResult br;
    br.label = l.action_label(a);
    br.action = a;
    br.outcomes = action_block(q, l, a);
    if (br.outcomes.empty()) {
      br.defined = false;
      br.residual = std::numeric_limits<double>::quiet_NaN();
    } else {
      br.residual = upper_expectation(data, Gamble::indicator(data.k(), br.outcomes) * resid);
      br.diagnostic_II = diagnostic_II(q, l, data, a);
    }
    flag(br, tolerance);
    rep.blocks.push_back(std::move(br));
  }
  return rep;
}

double marginal_gamble_residual(double mu, double c_width, double c_loss, int action,
                                int outcome) {
  if (!(c_width >= 0.0) || mu - c_width < 0.0 || mu + c_width > 1.0) {
    throw DomainError("forecast interval [mu - width, mu + width] must lie in [0, 1]");
  }
  if (!(c_loss > 0.0 && c_loss < 1.0)) throw DomainError("c_loss must lie in (0, 1)");
  if ((action != 0 && action != 1) || (outcome != 0 && outcome != 1)) {
    throw DomainError("binary action and outcome expected");
  }
  auto loss = [&](int y) { return action == 0 ? (1.0 - c_loss) * y : c_loss * (1 - y); };
  const double b = loss(1) - loss(0);
  auto resid = [&](int y) { return loss(y) - (b * (y - mu) - std::abs(b) * c_width); };
  if (std::abs(resid(0) - resid(1)) > 1e-12) {
    throw ConsistencyError("marginal gamble residual is not constant");
  }
  return resid(outcome);
}

}  // namespace iprob
