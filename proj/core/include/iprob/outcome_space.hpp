#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace iprob {

// A finite possibility set Omega = {0, ..., k-1}, together with the feature map
// X: Omega -> {0, ..., J-1} and an optional real label map Y.
class OutcomeSpace {
 public:
  // feature_labels may be empty, in which case J = 1 + max(feature_of) and the
  // labels default to "x0", "x1", ...
  OutcomeSpace(std::vector<std::string> outcome_labels,
               std::vector<std::size_t> feature_of,
               std::vector<std::string> feature_labels = {},
               std::optional<std::vector<double>> label_of = std::nullopt);

  // Binary label space {y=0, y=1} with a trivial (constant) feature.
  static OutcomeSpace binary(const std::string& label_name = "y");

  // X x Y, ordered feature-major: (x0,y0), (x0,y1), ..., (x1,y0), ...
  static OutcomeSpace product(std::vector<std::string> feature_labels,
                              const std::vector<double>& label_values,
                              const std::string& label_name = "y");

  std::size_t size() const noexcept { return outcome_labels_.size(); }
  std::size_t feature_count() const noexcept { return feature_labels_.size(); }

  std::size_t feature_of(std::size_t outcome) const { return feature_of_.at(outcome); }
  const std::vector<std::size_t>& feature_map() const noexcept { return feature_of_; }
  const std::string& outcome_label(std::size_t outcome) const { return outcome_labels_.at(outcome); }
  const std::vector<std::string>& outcome_labels() const noexcept { return outcome_labels_; }
  const std::string& feature_label(std::size_t x) const { return feature_labels_.at(x); }
  const std::vector<std::string>& feature_labels() const noexcept { return feature_labels_; }

  bool has_labels() const noexcept { return label_of_.has_value(); }
  // Throws DomainError when the space carries no label map.
  double label_of(std::size_t outcome) const;
  const std::optional<std::vector<double>>& label_map() const noexcept { return label_of_; }
  // True when a label map exists and every label is 0 or 1.
  bool has_binary_labels() const noexcept;

  // Outcomes omega with X(omega) = x, in increasing order.
  const std::vector<std::size_t>& outcomes_with_feature(std::size_t x) const {
    return by_feature_.at(x);
  }

  // Outcome with X = x and Y = y, if any.
  std::optional<std::size_t> find_outcome(std::size_t x, double y) const;

  friend bool operator==(const OutcomeSpace& a, const OutcomeSpace& b) noexcept;

 private:
  std::vector<std::string> outcome_labels_;
  std::vector<std::size_t> feature_of_;
  std::vector<std::string> feature_labels_;
  std::optional<std::vector<double>> label_of_;
  std::vector<std::vector<std::size_t>> by_feature_;
};

using SpacePtr = std::shared_ptr<const OutcomeSpace>;

inline SpacePtr make_space(OutcomeSpace space) {
  return std::make_shared<const OutcomeSpace>(std::move(space));
}

// Pointer-equal or structurally equal.
bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept;

}  // namespace iprob
