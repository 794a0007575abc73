#pragma once

#include <cstddef>
#include <vector>

#include "iprob/credal_set.hpp"
#include "iprob/losses.hpp"

namespace iprob {

inline constexpr double kTieTol = 1e-10;

// Map from feature values to credal sets on the full outcome space.
class Forecast {
 public:
  // One credal set per feature value of the space.
  Forecast(SpacePtr space, std::vector<CredalSet> per_feature);
  // The same credal set for every feature value.
  static Forecast constant(CredalSet c);

  const OutcomeSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  std::size_t feature_count() const noexcept { return per_feature_.size(); }
  const CredalSet& at(std::size_t x) const { return per_feature_.at(x); }
  const CredalSet& for_outcome(std::size_t omega) const { return at(space_->feature_of(omega)); }
  bool is_constant() const noexcept { return constant_; }

 private:
  SpacePtr space_;
  std::vector<CredalSet> per_feature_;
  bool constant_ = false;
};

struct ActionChoice {
  std::size_t action_index = 0;
  double worst_case_value = 0.0;
  std::vector<std::size_t> argmin_set;
  std::vector<double> values;  // upper expectation of every loss row
};

// MinMax action: argmin_a of the upper expectation of row a, lowest index
// among actions within tie_tol of the minimum.
ActionChoice minmax_action(const CredalSet& c, const LossMatrix& l, double tie_tol = kTieTol);

// The action recommended at every feature value.
std::vector<ActionChoice> recommended_actions(const Forecast& q, const LossMatrix& l,
                                              double tie_tol = kTieTol);

double tailored_score(const Forecast& q, const LossMatrix& l, std::size_t omega);

// omega -> l(a*_{Q(X(omega))}, omega).
Gamble score_gamble(const Forecast& q, const LossMatrix& l);

// Upper expectation under the data model of the score gamble.
double ip_score(const Forecast& q, const LossMatrix& l, const CredalSet& data);

void require_matching(const CredalSet& c, const LossMatrix& l);

}  // namespace iprob
