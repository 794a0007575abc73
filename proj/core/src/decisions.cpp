#include "iprob/decisions.hpp"

#include <algorithm>

#include "iprob/error.hpp"

namespace iprob {

Forecast::Forecast(SpacePtr space, std::vector<CredalSet> per_feature)
    : space_(std::move(space)), per_feature_(std::move(per_feature)) {
  if (!space_) throw DomainError("forecast without outcome space");
  if (per_feature_.size() != space_->feature_count()) {
    throw DimensionError("forecast has " + std::to_string(per_feature_.size()) +
                         " credal sets for " + std::to_string(space_->feature_count()) +
                         " feature values");
  }
  for (const auto& c : per_feature_) {
    if (!same_space(c.space_ptr(), space_)) {
      throw DimensionError("forecast credal set on a different outcome space");
    }
  }
}

Forecast Forecast::constant(CredalSet c) {
  SpacePtr s = c.space_ptr();
  std::vector<CredalSet> v(s->feature_count(), c);
  Forecast f(std::move(s), std::move(v));
  f.constant_ = true;
  return f;
}

void require_matching(const CredalSet& c, const LossMatrix& l) {
  if (c.k() != l.k()) {
    throw DimensionError("loss matrix has " + std::to_string(l.k()) + " columns, outcome space " +
                         std::to_string(c.k()) + " outcomes");
  }
}

ActionChoice minmax_action(const CredalSet& c, const LossMatrix& l, double tie_tol) {
  require_matching(c, l);
  ActionChoice out;
  out.values.resize(l.action_count());
  for (std::size_t a = 0; a < l.action_count(); ++a) {
    out.values[a] = upper_expectation(c, l.row(a));
  }
  const double best = *std::min_element(out.values.begin(), out.values.end());
  for (std::size_t a = 0; a < out.values.size(); ++a) {
    if (out.values[a] <= best + tie_tol) out.argmin_set.push_back(a);
  }
  out.action_index = out.argmin_set.front();
  out.worst_case_value = out.values[out.action_index];
  return out;
}

std::vector<ActionChoice> recommended_actions(const Forecast& q, const LossMatrix& l,
                                              double tie_tol) {
  std::vector<ActionChoice> out;
  out.reserve(q.feature_count());
  if (q.is_constant() && q.feature_count() > 0) {
    out.assign(q.feature_count(), minmax_action(q.at(0), l, tie_tol));
    return out;
  }
  for (std::size_t x = 0; x < q.feature_count(); ++x) {
    out.push_back(minmax_action(q.at(x), l, tie_tol));
  }
  return out;
}

double tailored_score(const Forecast& q, const LossMatrix& l, std::size_t omega) {
  if (omega >= q.space().size()) throw DomainError("outcome index out of range");
  const auto choice = minmax_action(q.for_outcome(omega), l);
  return l(choice.action_index, omega);
}

Gamble score_gamble(const Forecast& q, const LossMatrix& l) {
  const auto actions = recommended_actions(q, l);
  const auto& space = q.space();
  std::vector<double> v(space.size());
  for (std::size_t w = 0; w < v.size(); ++w) {
    v[w] = l(actions[space.feature_of(w)].action_index, w);
  }
  return Gamble(std::move(v));
}

double ip_score(const Forecast& q, const LossMatrix& l, const CredalSet& data) {
  if (!same_space(q.space_ptr(), data.space_ptr())) {
    throw DimensionError("forecast and data model on different outcome spaces");
  }
  return upper_expectation(data, score_gamble(q, l));
}

}  // namespace iprob
