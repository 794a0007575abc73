#include "iprob/gbr.hpp"

#include <algorithm>
#include <cmath>

#include "iprob/error.hpp"

namespace iprob {

Partition::Partition(std::size_t k, std::vector<std::vector<std::size_t>> blocks,
                     std::vector<std::string> labels)
    : k_(k), blocks_(std::move(blocks)), labels_(std::move(labels)) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  block_of_.assign(k_, kNone);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].empty()) throw DomainError("partition block " + std::to_string(b) + " is empty");
    std::sort(blocks_[b].begin(), blocks_[b].end());
    for (std::size_t w : blocks_[b]) {
      if (w >= k_) throw DomainError("partition index out of range");
      if (block_of_[w] != kNone) throw DomainError("partition blocks overlap");
      block_of_[w] = b;
    }
  }
  for (std::size_t w = 0; w < k_; ++w) {
    if (block_of_[w] == kNone) {
      throw DomainError("partition does not cover outcome " + std::to_string(w));
    }
  }
  if (labels_.empty()) {
    for (std::size_t b = 0; b < blocks_.size(); ++b) labels_.push_back("B" + std::to_string(b));
  } else if (labels_.size() != blocks_.size()) {
    throw DimensionError("partition label count differs from block count");
  }
}

Partition Partition::trivial(std::size_t k) {
  std::vector<std::size_t> all(k);
  for (std::size_t i = 0; i < k; ++i) all[i] = i;
  return Partition(k, {all}, {"all"});
}

Partition Partition::by_feature(const OutcomeSpace& space) {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < space.feature_count(); ++x) {
    if (space.outcomes_with_feature(x).empty()) continue;
    blocks.push_back(space.outcomes_with_feature(x));
    labels.push_back(space.feature_label(x));
  }
  return Partition(space.size(), std::move(blocks), std::move(labels));
}

bool Partition::is_coarsening_of(const Partition& finer) const {
  if (finer.k() != k_) return false;
  for (const auto& fb : finer.blocks()) {
    const std::size_t b = block_of_[fb.front()];
    for (std::size_t w : fb) {
      if (block_of_[w] != b) return false;
    }
  }
  return true;
}

namespace {

void require_positive(const CredalSet& c, std::span<const std::size_t> event) {
  const double lp = lower_probability(c, event);
  if (!(lp > kGbrMinLowerProb)) {
    throw DomainError("GBR undefined: zero lower probability (" + std::to_string(lp) + ")");
  }
}

}  // namespace

CredalSet condition_credal(const CredalSet& c, std::span<const std::size_t> event) {
  require_positive(c, event);
  const Gamble chi = Gamble::indicator(c.k(), event);
  std::vector<ProbVec> out;
  out.reserve(c.vertex_count());
  for (const auto& v : c.vertices()) {
    std::vector<double> q(c.k());
    for (std::size_t w = 0; w < q.size(); ++w) q[w] = v[w] * chi[w];
    out.push_back(ProbVec::normalized(std::move(q)));
  }
  return CredalSet(c.space_ptr(), std::move(out));
}

double gbr_upper_conditioned(const CredalSet& c, const Gamble& z,
                             std::span<const std::size_t> event) {
  return upper_expectation(condition_credal(c, event), z);
}

double gbr_upper_root(const CredalSet& c, const Gamble& z, std::span<const std::size_t> event) {
  require_positive(c, event);
  const Gamble chi = Gamble::indicator(c.k(), event);
  double lo = z.min();
  double hi = z.max();
  // g(alpha) = upper(chi (Z - alpha)) is nonincreasing, g(lo) >= 0 >= g(hi).
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (upper_expectation(c, chi * (z - mid)) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double gbr_upper(const CredalSet& c, const Gamble& z, std::span<const std::size_t> event) {
  const double a = gbr_upper_conditioned(c, z, event);
  const double b = gbr_upper_root(c, z, event);
  if (std::abs(a - b) > kGbrRouteTol) {
    throw ConsistencyError("GBR routes disagree: conditioned " + std::to_string(a) + " vs root " +
                           std::to_string(b));
  }
  return a;
}

double gbr_lower(const CredalSet& c, const Gamble& z, std::span<const std::size_t> event) {
  return -gbr_upper(c, -z, event);
}

Forecast gbr_forecast(const CredalSet& c) {
  const auto& space = c.space();
  std::vector<CredalSet> sets;
  for (std::size_t x = 0; x < space.feature_count(); ++x) {
    const auto& ev = space.outcomes_with_feature(x);
    if (ev.empty() || !(lower_probability(c, ev) > kGbrMinLowerProb)) {
      throw DomainError("GBR forecast undefined at feature value '" + space.feature_label(x) +
                        "': zero lower probability");
    }
    sets.push_back(condition_credal(c, ev));
  }
  return Forecast(c.space_ptr(), std::move(sets));
}

}  // namespace iprob
