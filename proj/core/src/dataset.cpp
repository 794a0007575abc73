#include "iprob/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "iprob/error.hpp"
#include "iprob/random.hpp"

namespace iprob {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void GroupedDataset::push_back(std::span<const double> x, int label, std::size_t group) {
  if (x.size() != dim()) throw DimensionError("row has wrong feature count");
  features.insert(features.end(), x.begin(), x.end());
  labels.push_back(label);
  groups.push_back(group);
  group_count = std::max(group_count, group + 1);
}

std::vector<std::vector<std::size_t>> GroupedDataset::group_rows() const {
  std::vector<std::vector<std::size_t>> out(group_count);
  for (std::size_t i = 0; i < size(); ++i) out[groups[i]].push_back(i);
  return out;
}

GroupedDataset GroupedDataset::subset(std::span<const std::size_t> rows) const {
  GroupedDataset out;
  out.feature_names = feature_names;
  out.group_count = group_count;
  out.features.reserve(rows.size() * dim());
  for (std::size_t r : rows) {
    const auto x = row(r);
    out.features.insert(out.features.end(), x.begin(), x.end());
    out.labels.push_back(labels[r]);
    out.groups.push_back(groups[r]);
  }
  return out;
}

void GroupedDataset::require_nonempty_groups() const {
  if (size() == 0) throw DomainError("dataset is empty");
  std::vector<std::size_t> n(group_count, 0);
  for (std::size_t g : groups) ++n[g];
  for (std::size_t g = 0; g < n.size(); ++g) {
    if (n[g] == 0) throw DomainError("group " + std::to_string(g) + " has no rows");
  }
}

void GroupedDataset::validate() const {
  if (features.size() != size() * dim() || groups.size() != size()) {
    throw DimensionError("dataset columns have inconsistent lengths");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw DomainError("non-binary label at row " + std::to_string(i));
    if (groups[i] >= group_count) throw DomainError("group index out of range at row " + std::to_string(i));
  }
  for (double v : features) {
    if (!std::isfinite(v)) throw DomainError("non-finite feature value");
  }
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, std::size_t row, const std::string& col) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || p != end || !std::isfinite(v)) {
    throw IoError("row " + std::to_string(row) + ", column '" + col + "': cannot parse '" + s + "'");
  }
  return v;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw IoError("missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

GroupedDataset load_csv(const std::string& path, const std::string& label_col,
                        const std::string& group_col, const std::vector<std::string>& feature_cols) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + path + "' has no header row");
  const auto header = split_line(line);
  const std::size_t label_i = column_index(header, label_col);
  const bool has_group = !group_col.empty();
  const std::size_t group_i = has_group ? column_index(header, group_col) : 0;

  GroupedDataset ds;
  std::vector<std::size_t> feat_i;
  if (feature_cols.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == label_i || (has_group && c == group_i)) continue;
      feat_i.push_back(c);
      ds.feature_names.push_back(header[c]);
    }
  } else {
    for (const auto& f : feature_cols) {
      feat_i.push_back(column_index(header, f));
      ds.feature_names.push_back(f);
    }
  }

  std::vector<double> x(feat_i.size());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size()) {
      throw IoError("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                    " cells, found " + std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < feat_i.size(); ++j) {
      x[j] = parse_number(cells[feat_i[j]], row, header[feat_i[j]]);
    }
    const double y = parse_number(cells[label_i], row, label_col);
    if (y != 0.0 && y != 1.0) {
      throw IoError("row " + std::to_string(row) + ": label '" + cells[label_i] + "' is not 0 or 1");
    }
    std::size_t g = 0;
    if (has_group) {
      const double gv = parse_number(cells[group_i], row, group_col);
      if (gv < 0 || gv != std::floor(gv) || gv > 1e9) {
        throw IoError("row " + std::to_string(row) + ": group '" + cells[group_i] +
                      "' is not a non-negative integer");
      }
      g = static_cast<std::size_t>(gv);
    }
    ds.push_back(x, static_cast<int>(y), g);
    ++row;
  }
  return ds;
}

std::string to_csv(const GroupedDataset& ds) {
  std::string out;
  for (const auto& f : ds.feature_names) out += f + ",";
  out += "label,group\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.row(i)) out += format_double(v) + ",";
    out += std::to_string(ds.labels[i]) + "," + std::to_string(ds.groups[i]) + "\n";
  }
  return out;
}

void write_csv(const GroupedDataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << to_csv(ds);
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<double> interaction_row(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) out.push_back(x[i] * x[j]);
  }
  return out;
}

GroupedDataset interaction_features(const GroupedDataset& ds, bool enabled) {
  if (!enabled) return ds;
  GroupedDataset out;
  out.feature_names = ds.feature_names;
  for (std::size_t i = 0; i < ds.dim(); ++i) {
    for (std::size_t j = i + 1; j < ds.dim(); ++j) {
      out.feature_names.push_back(ds.feature_names[i] + "*" + ds.feature_names[j]);
    }
  }
  out.group_count = ds.group_count;
  for (std::size_t r = 0; r < ds.size(); ++r) {
    out.push_back(interaction_row(ds.row(r)), ds.labels[r], ds.groups[r]);
  }
  return out;
}

DataSplit split(const GroupedDataset& ds, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw DomainError("test fraction must lie in (0, 1)");
  }
  DataSplit out;
  const auto by_group = ds.group_rows();
  for (std::size_t g = 0; g < by_group.size(); ++g) {
    auto rows = by_group[g];
    if (rows.empty()) continue;
    CounterRng rng(derive_seed(seed, "split", g));
    for (std::size_t i = rows.size(); i > 1; --i) {
      std::swap(rows[i - 1], rows[rng.uniform_index(i)]);
    }
    const auto n_test = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(rows.size())));
    if (n_test == 0 || n_test == rows.size()) {
      throw DomainError("split empties group " + std::to_string(g) + " (" +
                        std::to_string(rows.size()) + " rows)");
    }
    out.test_rows.insert(out.test_rows.end(), rows.begin(), rows.begin() + n_test);
    out.train_rows.insert(out.train_rows.end(), rows.begin() + n_test, rows.end());
  }
  std::sort(out.train_rows.begin(), out.train_rows.end());
  std::sort(out.test_rows.begin(), out.test_rows.end());
  out.train = ds.subset(out.train_rows);
  out.test = ds.subset(out.test_rows);
  return out;
}

Standardizer::Standardizer(std::vector<double> mean, std::vector<double> stddev)
    : mean_(std::move(mean)), std_(std::move(stddev)) {
  if (mean_.size() != std_.size()) throw DimensionError("standardizer mean/std lengths differ");
  for (double s : std_) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("standardizer std must be positive");
  }
}

Standardizer Standardizer::identity(std::size_t dim) {
  return Standardizer(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

Standardizer Standardizer::fit(const GroupedDataset& ds) {
  const std::size_t d = ds.dim();
  if (ds.size() == 0) throw DomainError("cannot fit a standardizer on zero rows");
  std::vector<double> mean(d, 0.0), sd(d, 0.0);
  const double n = static_cast<double>(ds.size());
  for (std::size_t r = 0; r < ds.size(); ++r) {
    const auto x = ds.row(r);
    for (std::size_t j = 0; j < d; ++j) mean[j] += x[j];
  }
  for (double& m : mean) m /= n;
  for (std::size_t r = 0; r < ds.size(); ++r) {
    const auto x = ds.row(r);
    for (std::size_t j = 0; j < d; ++j) sd[j] += (x[j] - mean[j]) * (x[j] - mean[j]);
  }
  std::vector<std::string> warn;
  for (std::size_t j = 0; j < d; ++j) {
    sd[j] = std::sqrt(sd[j] / n);
    if (!(sd[j] > 1e-12 * std::max(1.0, std::abs(mean[j])))) {
      sd[j] = 1.0;
      mean[j] = 0.0;
      warn.push_back(ds.feature_names[j]);
    }
  }
  Standardizer s(std::move(mean), std::move(sd));
  s.warnings_ = std::move(warn);
  return s;
}

void Standardizer::apply_row(std::span<const double> x, std::span<double> out) const {
  if (x.size() != dim() || out.size() != dim()) throw DimensionError("standardizer dimension mismatch");
  for (std::size_t j = 0; j < dim(); ++j) out[j] = (x[j] - mean_[j]) / std_[j];
}

GroupedDataset Standardizer::apply(const GroupedDataset& ds) const {
  if (ds.dim() != dim()) throw DimensionError("standardizer dimension mismatch");
  GroupedDataset out = ds;
  for (std::size_t r = 0; r < ds.size(); ++r) {
    for (std::size_t j = 0; j < dim(); ++j) {
      double& v = out.features[r * dim() + j];
      v = (v - mean_[j]) / std_[j];
    }
  }
  return out;
}

GroupedDataset Standardizer::invert(const GroupedDataset& ds) const {
  if (ds.dim() != dim()) throw DimensionError("standardizer dimension mismatch");
  GroupedDataset out = ds;
  for (std::size_t r = 0; r < ds.size(); ++r) {
    for (std::size_t j = 0; j < dim(); ++j) {
      double& v = out.features[r * dim() + j];
      v = v * std_[j] + mean_[j];
    }
  }
  return out;
}

}  // namespace iprob
