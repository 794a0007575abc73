#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "iprob/outcome_space.hpp"

namespace iprob {

// Raw probability entries below -kNegativeClampTol are rejected; entries in
// [-kNegativeClampTol, 0) are clamped to zero.
inline constexpr double kNegativeClampTol = 1e-12;
// Raw probability vectors whose sum is further than this from 1 are rejected.
inline constexpr double kSumTol = 1e-6;
// Agreement threshold of the hull-equivalence battery.
inline constexpr double kHullTol = 1e-9;

// A real-valued function on Omega.
class Gamble {
 public:
  Gamble() = default;
  explicit Gamble(std::vector<double> values);

  static Gamble constant(std::size_t k, double c);
  // chi_A; throws DomainError for indices >= k.
  static Gamble indicator(std::size_t k, std::span<const std::size_t> event);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  double min() const;
  double max() const;

  Gamble operator-() const;
  friend Gamble operator+(const Gamble& a, const Gamble& b);
  friend Gamble operator-(const Gamble& a, const Gamble& b);
  friend Gamble operator+(const Gamble& a, double c);
  friend Gamble operator-(const Gamble& a, double c);
  friend Gamble operator*(double c, const Gamble& a);
  // Pointwise product.
  friend Gamble operator*(const Gamble& a, const Gamble& b);

 private:
  std::vector<double> values_;
};

// A point of the simplex.  Construction normalizes (clamp, divide by sum).
class ProbVec {
 public:
  ProbVec() = default;

  // Throws DomainError when an entry is below -1e-12, non-finite, or the sum is
  // more than 1e-6 away from 1.
  static ProbVec from(std::vector<double> raw);
  // Like from(), but accepts any positive total mass (used for conditioning).
  static ProbVec normalized(std::vector<double> weights);
  static ProbVec point_mass(std::size_t k, std::size_t outcome);
  static ProbVec uniform(std::size_t k);

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const noexcept { return p_; }

  double expectation(const Gamble& z) const;
  double probability(std::span<const std::size_t> event) const;

  friend bool operator==(const ProbVec&, const ProbVec&) = default;

 private:
  explicit ProbVec(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

// A nonempty finite generating set of probabilities; the credal set is the
// closed convex hull of the vertices.  Immutable.
class CredalSet {
 public:
  CredalSet(SpacePtr space, std::vector<ProbVec> vertices);

  static CredalSet singleton(SpacePtr space, ProbVec p);
  // Convenience: each row goes through ProbVec::from.
  static CredalSet from_rows(SpacePtr space, const std::vector<std::vector<double>>& rows);

  const OutcomeSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  std::size_t k() const noexcept { return space_->size(); }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  const std::vector<ProbVec>& vertices() const noexcept { return vertices_; }
  const ProbVec& vertex(std::size_t i) const { return vertices_.at(i); }

  // This set with one extra generating point.
  CredalSet with_vertex(ProbVec p) const;

 private:
  SpacePtr space_;
  std::vector<ProbVec> vertices_;
};

struct AttainedExpectation {
  double value;
  std::size_t vertex;  // lowest vertex index attaining the value
};

// sup_{P in co(C)} E_P[Z], attained at a vertex.
double upper_expectation(const CredalSet& c, const Gamble& z);
AttainedExpectation upper_expectation_attained(const CredalSet& c, const Gamble& z);
// -upper_expectation(C, -Z).
double lower_expectation(const CredalSet& c, const Gamble& z);

double upper_probability(const CredalSet& c, std::span<const std::size_t> event);
double lower_probability(const CredalSet& c, std::span<const std::size_t> event);

// P_lambda = sum_i lambda_i P_i.  lambda must lie in the simplex over the
// vertices up to 1e-9; throws DomainError otherwise.
ProbVec mixture(const CredalSet& c, std::span<const double> lambda);

// Deterministic battery used to compare support functions: all 2^k - 2
// nontrivial indicators when k <= 12, then 256 seeded random gambles.
std::vector<Gamble> hull_test_battery(std::size_t k);

// True iff the upper expectations agree within 1e-9 on hull_test_battery(k).
// Sound for "not equivalent"; agreement is evidence, not proof, of equality.
bool hull_equivalent(const CredalSet& a, const CredalSet& b);

// First battery gamble on which the two upper expectations differ by more
// than 1e-9, if any.
std::optional<Gamble> separating_gamble(const CredalSet& a, const CredalSet& b);

// Throws DimensionError when the two sets live on different outcome spaces.
void require_same_space(const CredalSet& a, const CredalSet& b);

}  // namespace iprob
