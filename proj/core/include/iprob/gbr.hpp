#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "iprob/credal_set.hpp"
#include "iprob/decisions.hpp"

namespace iprob {

// Conditioning requires a lower probability strictly above this.
inline constexpr double kGbrMinLowerProb = 1e-12;
// The two GBR routes must agree to this; larger gaps raise ConsistencyError.
inline constexpr double kGbrRouteTol = 1e-6;

// Disjoint cover of Omega by nonempty blocks.
class Partition {
 public:
  Partition(std::size_t k, std::vector<std::vector<std::size_t>> blocks,
            std::vector<std::string> labels = {});

  static Partition trivial(std::size_t k);
  // Blocks {omega : X(omega) = x}, labelled by the feature labels.
  static Partition by_feature(const OutcomeSpace& space);

  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  const std::vector<std::size_t>& block(std::size_t b) const { return blocks_.at(b); }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
  const std::string& label(std::size_t b) const { return labels_.at(b); }
  // Index of the block holding omega.
  std::size_t block_of(std::size_t omega) const { return block_of_.at(omega); }
  // True if every block of this partition is a union of blocks of finer.
  bool is_coarsening_of(const Partition& finer) const;

 private:
  std::size_t k_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> block_of_;
};

// Credal set generated by the conditioned vertices V(. | B).  Throws
// DomainError when the lower probability of B is not positive.
CredalSet condition_credal(const CredalSet& c, std::span<const std::size_t> event);

// Upper expectation under condition_credal.
double gbr_upper_conditioned(const CredalSet& c, const Gamble& z, std::span<const std::size_t> event);
// Root of alpha -> upper(C, chi_B (Z - alpha)) by 200 bisection steps.
double gbr_upper_root(const CredalSet& c, const Gamble& z, std::span<const std::size_t> event);

// Both routes; throws ConsistencyError if they disagree by more than 1e-6.
double gbr_upper(const CredalSet& c, const Gamble& z, std::span<const std::size_t> event);
double gbr_lower(const CredalSet& c, const Gamble& z, std::span<const std::size_t> event);

// x -> C conditioned on {X = x}.  Throws DomainError naming the first feature
// value of zero lower probability.
Forecast gbr_forecast(const CredalSet& c);

}  // namespace iprob
