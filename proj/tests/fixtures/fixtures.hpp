#pragma once

// Shared fixture instances: the umbrella decision problem (binary rain) and its
// two-feature extension with cloudy/sunny skies.

#include <vector>

#include "iprob/credal_set.hpp"
#include "iprob/losses.hpp"
#include "iprob/outcome_space.hpp"

namespace fixtures {

inline iprob::SpacePtr rain_space() {
  return iprob::make_space(iprob::OutcomeSpace({"rain=0", "rain=1"}, {0, 0}, {"all"},
                                               std::vector<double>{0.0, 1.0}));
}

// vertices (P(rain=0), P(rain=1))
inline iprob::CredalSet rain_interval(const iprob::SpacePtr& s, double lo, double hi) {
  return iprob::CredalSet::from_rows(s, {{1.0 - lo, lo}, {1.0 - hi, hi}});
}

inline iprob::LossMatrix umbrella_loss(double c = 0.1) {
  return iprob::LossMatrix({{0.0, 1.0 - c}, {c, 0.0}}, {"u=0", "u=1"});
}

// Outcomes (cloudy, r0), (cloudy, r1), (sunny, r0), (sunny, r1).
inline iprob::SpacePtr sky_space() {
  return iprob::make_space(iprob::OutcomeSpace::product({"cloudy", "sunny"}, {0.0, 1.0}, "rain"));
}

inline std::vector<double> p1() { return {0.02, 0.38, 0.57, 0.03}; }
inline std::vector<double> p2() { return {0.135, 0.765, 0.085, 0.015}; }

inline iprob::CredalSet sky_data(const iprob::SpacePtr& s) {
  return iprob::CredalSet::from_rows(s, {p1(), p2()});
}

// Two outcomes, three actions, data model of the two point masses.
inline iprob::SpacePtr two_point_space() {
  return iprob::make_space(iprob::OutcomeSpace({"w1", "w2"}, {0, 0}, {"all"}));
}

inline iprob::LossMatrix three_action_loss() {
  return iprob::LossMatrix({{2.0, 7.0}, {6.0, 3.0}, {4.0, 5.0}}, {"a1", "a2", "a3"});
}

inline iprob::CredalSet two_point_data(const iprob::SpacePtr& s) {
  return iprob::CredalSet::from_rows(s, {{1.0, 0.0}, {0.0, 1.0}});
}

}  // namespace fixtures
