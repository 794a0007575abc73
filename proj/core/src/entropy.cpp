#include "iprob/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iprob/error.hpp"
#include "iprob/matrix_game.hpp"

namespace iprob {

namespace {

// cost[i][x][a] = sum_{omega : X = x} P_i(omega) l(a, omega)
using CostTable = std::vector<std::vector<std::vector<double>>>;

CostTable cost_table(const CredalSet& data, const LossMatrix& l) {
  const auto& space = data.space();
  CostTable t(data.vertex_count());
  for (std::size_t i = 0; i < data.vertex_count(); ++i) {
    const auto p = data.vertex(i).values();
    t[i].assign(space.feature_count(), std::vector<double>(l.action_count(), 0.0));
    for (std::size_t x = 0; x < space.feature_count(); ++x) {
      for (std::size_t a = 0; a < l.action_count(); ++a) {
        double s = 0.0;
        for (std::size_t w : space.outcomes_with_feature(x)) s += p[w] * l(a, w);
        t[i][x][a] = s;
      }
    }
  }
  return t;
}

struct BestResponse {
  LiftedAction action;
  double value;
};

BestResponse best_response(const CostTable& t, const std::vector<double>& lambda) {
  const std::size_t nx = t.front().size();
  const std::size_t na = t.front().front().size();
  BestResponse br{{std::vector<std::size_t>(nx, 0)}, 0.0};
  for (std::size_t x = 0; x < nx; ++x) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < na; ++a) {
      double v = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) v += lambda[i] * t[i][x][a];
      if (v < best) {
        best = v;
        br.action.per_feature_action[x] = a;
      }
    }
    br.value += best;
  }
  return br;
}

double column_payoff(const CostTable& t, std::size_t i, const LiftedAction& a) {
  double v = 0.0;
  for (std::size_t x = 0; x < a.per_feature_action.size(); ++x) {
    v += t[i][x][a.per_feature_action[x]];
  }
  return v;
}

struct GameOutcome {
  std::vector<double> lambda;
  double upper = 0.0;
  std::vector<LiftedAction> support;
  std::vector<double> weights;
  std::size_t iterations = 0;
};

// Double oracle: exact restricted games over a growing set of lifted actions,
// expanded by best responses until the bracket closes.
GameOutcome solve_double_oracle(const CostTable& t, const MaxentOptions& opts) {
  const std::size_t g = t.size();
  std::vector<LiftedAction> cols;
  auto add = [&](const LiftedAction& a) {
    if (std::find(cols.begin(), cols.end(), a) != cols.end()) return false;
    cols.push_back(a);
    return true;
  };
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<double> e(g, 0.0);
    e[i] = 1.0;
    add(best_response(t, e).action);
  }
  add(best_response(t, std::vector<double>(g, 1.0 / static_cast<double>(g))).action);

  GameOutcome out;
  for (std::size_t it = 1;; ++it) {
    if (it > opts.max_iter) throw NumericError("double oracle did not converge");
    PayoffMatrix m(g, cols.size());
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = column_payoff(t, i, cols[j]);
    }
    const GameSolution s = solve_game_simplex(m);
    const BestResponse br = best_response(t, s.row_strategy);
    out.lambda = s.row_strategy;
    out.upper = s.upper;
    out.iterations = it;
    out.support.clear();
    out.weights.clear();
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (s.col_strategy[j] > 0.0) {
        out.support.push_back(cols[j]);
        out.weights.push_back(s.col_strategy[j]);
      }
    }
    if (s.upper - br.value <= opts.tol || !add(br.action)) return out;
  }
}

GameOutcome solve_mwu(const CredalSet& data, const LossMatrix& l, const CostTable& t,
                      const MaxentOptions& opts) {
  const auto lifted = enumerate_lifted_actions(data.space(), l);
  PayoffMatrix m(t.size(), lifted.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < lifted.size(); ++j) m(i, j) = column_payoff(t, i, lifted[j]);
  }
  const GameSolution s = solve_game_mwu(m, opts.tol, opts.max_iter);
  GameOutcome out;
  out.lambda = s.row_strategy;
  out.upper = s.upper;
  out.iterations = s.iterations;
  for (std::size_t j = 0; j < lifted.size(); ++j) {
    if (s.col_strategy[j] > 1e-6) {
      out.support.push_back(lifted[j]);
      out.weights.push_back(s.col_strategy[j]);
    }
  }
  return out;
}

}  // namespace

double entropy_unconditional(const ProbVec& p, const LossMatrix& l) {
  if (p.size() != l.k()) throw DimensionError("entropy: probability and loss sizes differ");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < l.action_count(); ++a) best = std::min(best, p.expectation(l.row(a)));
  return best;
}

double entropy_conditional(const ProbVec& p, const LossMatrix& l, const OutcomeSpace& space) {
  if (p.size() != l.k() || p.size() != space.size()) {
    throw DimensionError("entropy: probability, loss and space sizes differ");
  }
  double total = 0.0;
  for (std::size_t x = 0; x < space.feature_count(); ++x) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < l.action_count(); ++a) {
      double s = 0.0;
      for (std::size_t w : space.outcomes_with_feature(x)) s += p[w] * l(a, w);
      best = std::min(best, s);
    }
    total += best;
  }
  return total;
}

std::uint64_t lifted_action_count(const OutcomeSpace& space, const LossMatrix& l,
                                  std::uint64_t guard) {
  std::uint64_t n = 1;
  for (std::size_t x = 0; x < space.feature_count(); ++x) {
    n *= l.action_count();
    if (n > guard) {
      throw DomainError("lifted action space exceeds " + std::to_string(guard) +
                        " entries; use the DRO trainer for this instance");
    }
  }
  return n;
}

std::vector<LiftedAction> enumerate_lifted_actions(const OutcomeSpace& space, const LossMatrix& l,
                                                   std::uint64_t guard) {
  const std::uint64_t n = lifted_action_count(space, l, guard);
  const std::size_t j = space.feature_count();
  std::vector<LiftedAction> out;
  out.reserve(n);
  std::vector<std::size_t> cur(j, 0);
  for (std::uint64_t c = 0; c < n; ++c) {
    out.push_back({cur});
    for (std::size_t x = j; x-- > 0;) {
      if (++cur[x] < l.action_count()) break;
      cur[x] = 0;
    }
  }
  return out;
}

Gamble lifted_loss(const LossMatrix& l, const OutcomeSpace& space, const LiftedAction& a) {
  if (a.per_feature_action.size() != space.feature_count()) {
    throw DimensionError("lifted action does not cover every feature value");
  }
  if (l.k() != space.size()) throw DimensionError("loss and outcome space sizes differ");
  std::vector<double> v(space.size());
  for (std::size_t w = 0; w < v.size(); ++w) {
    v[w] = l(a.per_feature_action.at(space.feature_of(w)), w);
  }
  return Gamble(std::move(v));
}

std::optional<Forecast> conditional_forecast(const ProbVec& p, const SpacePtr& space) {
  std::vector<CredalSet> sets;
  for (std::size_t x = 0; x < space->feature_count(); ++x) {
    std::vector<double> q(space->size(), 0.0);
    double mass = 0.0;
    for (std::size_t w : space->outcomes_with_feature(x)) {
      q[w] = p[w];
      mass += p[w];
    }
    if (mass <= kNegativeClampTol) return std::nullopt;
    sets.push_back(CredalSet::singleton(space, ProbVec::normalized(std::move(q))));
  }
  return Forecast(space, std::move(sets));
}

MaxentResult solve_maxent(const CredalSet& data, const LossMatrix& l, const MaxentOptions& opts) {
  require_matching(data, l);
  const auto& space = data.space();
  lifted_action_count(space, l);
  const CostTable t = cost_table(data, l);

  const GameOutcome g = opts.method == MaxentMethod::exact ? solve_double_oracle(t, opts)
                                                           : solve_mwu(data, l, t, opts);
  MaxentResult r;
  r.method = opts.method;
  r.iterations = g.iterations;
  r.lambda_star = g.lambda;
  r.lifted_support = g.support;
  r.lifted_weights = g.weights;
  r.value_lower = best_response(t, g.lambda).value;
  r.value_upper = std::max(g.upper, r.value_lower);
  r.duality_gap = r.value_upper - r.value_lower;
  r.maxent_value = r.value_lower;
  r.p_star = mixture(data, r.lambda_star);

  const std::size_t nx = space.feature_count();
  r.bayes_unique_per_x.assign(nx, false);
  r.zero_mass_x.assign(nx, false);
  r.all_unique = true;
  for (std::size_t x = 0; x < nx; ++x) {
    double mass = 0.0;
    for (std::size_t w : space.outcomes_with_feature(x)) mass += r.p_star[w];
    if (mass <= kNegativeClampTol) {
      r.zero_mass_x[x] = true;
      r.all_unique = false;
      continue;
    }
    std::vector<double> v(l.action_count(), 0.0);
    for (std::size_t a = 0; a < v.size(); ++a) {
      for (std::size_t w : space.outcomes_with_feature(x)) v[a] += r.p_star[w] * l(a, w);
      v[a] /= mass;
    }
    std::sort(v.begin(), v.end());
    r.bayes_unique_per_x[x] = v[1] - v[0] > kUniqueTol;
    r.all_unique = r.all_unique && r.bayes_unique_per_x[x];
  }

  if (auto f = conditional_forecast(r.p_star, data.space_ptr())) {
    r.pstar_forecast_score = ip_score(*f, l, data);
  }
  r.ip_score_star = r.all_unique && r.pstar_forecast_score ? *r.pstar_forecast_score
                                                           : r.maxent_value;
  return r;
}

double imprecise_entropy(const CredalSet& c, const LossMatrix& l) {
  return upper_expectation(c, score_gamble(Forecast::constant(c), l));
}

}  // namespace iprob
