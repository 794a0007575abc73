#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace iprob {

// Rows of (features, binary label, group).  Features are stored row-major.
struct GroupedDataset {
  std::vector<std::string> feature_names;
  std::vector<double> features;
  std::vector<int> labels;
  std::vector<std::size_t> groups;
  std::size_t group_count = 0;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t dim() const noexcept { return feature_names.size(); }
  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * dim(), dim()};
  }

  void push_back(std::span<const double> x, int label, std::size_t group);
  // Row indices of every group, in row order.
  std::vector<std::vector<std::size_t>> group_rows() const;
  GroupedDataset subset(std::span<const std::size_t> rows) const;
  // Throws DomainError naming the first group without rows.
  void require_nonempty_groups() const;
  // Throws DimensionError/DomainError on malformed contents.
  void validate() const;
};

// group_col may be empty, in which case every row is in group 0.  An empty
// feature_cols list selects every other column.  Errors name the row.
GroupedDataset load_csv(const std::string& path, const std::string& label_col = "label",
                        const std::string& group_col = "group",
                        const std::vector<std::string>& feature_cols = {});

// Header: features..., label, group.  Numbers with 17 significant digits.
void write_csv(const GroupedDataset& ds, const std::string& path);
std::string to_csv(const GroupedDataset& ds);

// Appends x_i x_j for all i < j.  Identity when enabled is false.
GroupedDataset interaction_features(const GroupedDataset& ds, bool enabled = true);
std::vector<double> interaction_row(std::span<const double> x);

struct DataSplit {
  GroupedDataset train;
  GroupedDataset test;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
};

// Seeded shuffle within each group; round(fraction * n_g) rows of group g go to
// test.  Throws DomainError if a nonempty group ends up empty on either side.
DataSplit split(const GroupedDataset& ds, double test_fraction, std::uint64_t seed);

// Per-column affine map x -> (x - mean) / std fitted on training rows.
// Constant columns get mean 0 and std 1, i.e. they pass through unchanged.
class Standardizer {
 public:
  Standardizer() = default;
  Standardizer(std::vector<double> mean, std::vector<double> stddev);

  static Standardizer fit(const GroupedDataset& ds);
  static Standardizer identity(std::size_t dim);

  GroupedDataset apply(const GroupedDataset& ds) const;
  GroupedDataset invert(const GroupedDataset& ds) const;
  void apply_row(std::span<const double> x, std::span<double> out) const;

  std::size_t dim() const noexcept { return mean_.size(); }
  const std::vector<double>& mean() const noexcept { return mean_; }
  const std::vector<double>& stddev() const noexcept { return std_; }
  // Names of the constant columns found by fit().
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  std::vector<double> mean_;
  std::vector<double> std_;
  std::vector<std::string> warnings_;
};

std::string format_double(double v);

}  // namespace iprob
