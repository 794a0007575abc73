#include "iprob/outcome_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iprob/error.hpp"

namespace iprob {

OutcomeSpace::OutcomeSpace(std::vector<std::string> outcome_labels,
                           std::vector<std::size_t> feature_of,
                           std::vector<std::string> feature_labels,
                           std::optional<std::vector<double>> label_of)
    : outcome_labels_(std::move(outcome_labels)),
      feature_of_(std::move(feature_of)),
      feature_labels_(std::move(feature_labels)),
      label_of_(std::move(label_of)) {
  const std::size_t k = outcome_labels_.size();
  if (k < 2) throw DomainError("outcome space needs at least 2 outcomes");
  if (feature_of_.size() != k) {
    throw DimensionError("feature_of has " + std::to_string(feature_of_.size()) +
                         " entries for " + std::to_string(k) + " outcomes");
  }
  if (feature_labels_.empty()) {
    const std::size_t j = 1 + *std::max_element(feature_of_.begin(), feature_of_.end());
    for (std::size_t x = 0; x < j; ++x) feature_labels_.push_back("x" + std::to_string(x));
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (feature_of_[i] >= feature_labels_.size()) {
      throw DomainError("feature index " + std::to_string(feature_of_[i]) +
                        " of outcome " + std::to_string(i) + " out of range");
    }
  }
  if (label_of_) {
    if (label_of_->size() != k) throw DimensionError("label_of length differs from k");
    for (double y : *label_of_) {
      if (!std::isfinite(y)) throw DomainError("non-finite label value");
    }
  }
  by_feature_.assign(feature_labels_.size(), {});
  for (std::size_t i = 0; i < k; ++i) by_feature_[feature_of_[i]].push_back(i);
}

OutcomeSpace OutcomeSpace::binary(const std::string& label_name) {
  return OutcomeSpace({label_name + "=0", label_name + "=1"}, {0, 0}, {"all"},
                      std::vector<double>{0.0, 1.0});
}

OutcomeSpace OutcomeSpace::product(std::vector<std::string> feature_labels,
                                   const std::vector<double>& label_values,
                                   const std::string& label_name) {
  std::vector<std::string> outcomes;
  std::vector<std::size_t> feature_of;
  std::vector<double> labels;
  for (std::size_t x = 0; x < feature_labels.size(); ++x) {
    for (double y : label_values) {
      std::ostringstream name;
      name << feature_labels[x] << "," << label_name << "=" << y;
      outcomes.push_back(name.str());
      feature_of.push_back(x);
      labels.push_back(y);
    }
  }
  return OutcomeSpace(std::move(outcomes), std::move(feature_of),
                      std::move(feature_labels), std::move(labels));
}

double OutcomeSpace::label_of(std::size_t outcome) const {
  if (!label_of_) throw DomainError("outcome space has no label map");
  return label_of_->at(outcome);
}

bool OutcomeSpace::has_binary_labels() const noexcept {
  if (!label_of_) return false;
  return std::all_of(label_of_->begin(), label_of_->end(),
                     [](double y) { return y == 0.0 || y == 1.0; });
}

std::optional<std::size_t> OutcomeSpace::find_outcome(std::size_t x, double y) const {
  if (!label_of_ || x >= by_feature_.size()) return std::nullopt;
  for (std::size_t i : by_feature_[x]) {
    if ((*label_of_)[i] == y) return i;
  }
  return std::nullopt;
}

bool operator==(const OutcomeSpace& a, const OutcomeSpace& b) noexcept {
  return a.outcome_labels_ == b.outcome_labels_ && a.feature_of_ == b.feature_of_ &&
         a.feature_labels_ == b.feature_labels_ && a.label_of_ == b.label_of_;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace iprob
