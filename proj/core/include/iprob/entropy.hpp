#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "iprob/credal_set.hpp"
#include "iprob/decisions.hpp"
#include "iprob/losses.hpp"

namespace iprob {

inline constexpr double kUniqueTol = 1e-9;
inline constexpr std::uint64_t kLiftedGuard = 1'000'000;

// One action per feature value.
struct LiftedAction {
  std::vector<std::size_t> per_feature_action;
  friend bool operator==(const LiftedAction&, const LiftedAction&) = default;
};

// min_a E_P[l(a, .)].
double entropy_unconditional(const ProbVec& p, const LossMatrix& l);

// sum_x min_a sum_{omega : X = x} P(omega) l(a, omega).  Feature values with
// P(X = x) = 0 contribute 0.
double entropy_conditional(const ProbVec& p, const LossMatrix& l, const OutcomeSpace& space);

// |A|^J; throws DomainError when it exceeds the guard.
std::uint64_t lifted_action_count(const OutcomeSpace& space, const LossMatrix& l,
                                  std::uint64_t guard = kLiftedGuard);
// All lifted actions, last feature varying fastest.
std::vector<LiftedAction> enumerate_lifted_actions(const OutcomeSpace& space, const LossMatrix& l,
                                                   std::uint64_t guard = kLiftedGuard);
// omega -> l(a_{X(omega)}, omega).
Gamble lifted_loss(const LossMatrix& l, const OutcomeSpace& space, const LiftedAction& a);

enum class MaxentMethod { exact, mwu };

struct MaxentOptions {
  double tol = 1e-8;
  std::size_t max_iter = 100000;
  MaxentMethod method = MaxentMethod::exact;
};

struct MaxentResult {
  std::vector<double> lambda_star;
  ProbVec p_star;
  double maxent_value = 0.0;
  double duality_gap = 0.0;
  // Game value bracket; maxent_value lies inside.
  double value_lower = 0.0;
  double value_upper = 0.0;
  std::vector<bool> bayes_unique_per_x;
  std::vector<bool> zero_mass_x;  // P*(X = x) = 0: forecast undefined there
  bool all_unique = false;
  // Score of x -> {P*(. | X = x)} when every P*(X = x) > 0.
  std::optional<double> pstar_forecast_score;
  // pstar_forecast_score under uniqueness, otherwise the game value.
  double ip_score_star = 0.0;
  // Minimizing lifted actions with their mixing weights.
  std::vector<LiftedAction> lifted_support;
  std::vector<double> lifted_weights;
  std::size_t iterations = 0;
  MaxentMethod method = MaxentMethod::exact;
};

// max over lambda in the simplex of min over lifted actions of
// sum_i lambda_i E_{P_i}[l'(a~)], with a certificate gap.
MaxentResult solve_maxent(const CredalSet& data, const LossMatrix& l,
                          const MaxentOptions& opts = {});

// P(. | X = x) as a singleton forecast; nullopt if some P(X = x) = 0.
std::optional<Forecast> conditional_forecast(const ProbVec& p, const SpacePtr& space);

// Upper expectation under C of the score gamble of the constant forecast C.
double imprecise_entropy(const CredalSet& c, const LossMatrix& l);

}  // namespace iprob
