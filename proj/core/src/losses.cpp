#include "iprob/losses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "iprob/error.hpp"

namespace iprob {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_c(double c) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("loss parameter c must lie in (0, 1)");
}

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

LossMatrix::LossMatrix(std::vector<std::vector<double>> entries,
                       std::vector<std::string> action_labels)
    : labels_(std::move(action_labels)) {
  if (entries.size() < 2) throw DomainError("loss matrix needs at least 2 actions");
  const std::size_t k = entries.front().size();
  if (k < 2) throw DimensionError("loss matrix needs at least 2 columns");
  for (auto& r : entries) {
    if (r.size() != k) throw DimensionError("ragged loss matrix");
    rows_.emplace_back(std::move(r));
  }
  if (labels_.empty()) {
    for (std::size_t a = 0; a < rows_.size(); ++a) labels_.push_back("a" + std::to_string(a));
  } else if (labels_.size() != rows_.size()) {
    throw DimensionError("action label count differs from row count");
  }
}

LossMatrix LossMatrix::affine(double alpha, double beta) const {
  std::vector<std::vector<double>> e;
  for (const auto& r : rows_) {
    std::vector<double> v(r.values().begin(), r.values().end());
    for (double& x : v) x = alpha * x + beta;
    e.push_back(std::move(v));
  }
  return LossMatrix(std::move(e), labels_);
}

ParametricBinaryLoss ParametricBinaryLoss::cost_sensitive(double c) {
  ParametricBinaryLoss l{LossKind::cost_sensitive, c, kDefaultSmoothF};
  l.validate();
  return l;
}

ParametricBinaryLoss ParametricBinaryLoss::winkler(double c, double smooth_f) {
  ParametricBinaryLoss l{LossKind::winkler, c, smooth_f};
  l.validate();
  return l;
}

void ParametricBinaryLoss::validate() const {
  if (kind == LossKind::cost_sensitive || kind == LossKind::winkler) check_c(c);
  if (kind == LossKind::winkler && !(smooth_f > 0.0 && std::isfinite(smooth_f))) {
    throw DomainError("smooth_f must be positive");
  }
}

double ParametricBinaryLoss::value(double a, double y) const {
  switch (kind) {
    case LossKind::log: {
      const double q = std::clamp(a, kLogClamp, 1.0 - kLogClamp);
      return -(y * std::log(q) + (1.0 - y) * std::log1p(-q));
    }
    case LossKind::brier:
      return (a - y) * (a - y);
    case LossKind::cost_sensitive:
      // linear in a between the two pure actions
      return (1.0 - c) * y * (1.0 - a) + c * (1.0 - y) * a;
    case LossKind::winkler:
      return winkler_loss(c, a, y, false, smooth_f);
  }
  return 0.0;
}

double ParametricBinaryLoss::train_value(double a, double y) const {
  if (kind == LossKind::winkler) return winkler_loss(c, a, y, true, smooth_f);
  return value(a, y);
}

double ParametricBinaryLoss::train_gradient(double a, double y) const {
  switch (kind) {
    case LossKind::log: {
      const double q = std::clamp(a, kLogClamp, 1.0 - kLogClamp);
      return -y / q + (1.0 - y) / (1.0 - q);
    }
    case LossKind::brier:
      return 2.0 * (a - y);
    case LossKind::cost_sensitive:
      return -(1.0 - c) * y + c * (1.0 - y);
    case LossKind::winkler:
      return winkler_gradient(c, a, y, smooth_f);
  }
  return 0.0;
}

std::string ParametricBinaryLoss::id() const {
  switch (kind) {
    case LossKind::log: return "log";
    case LossKind::brier: return "brier";
    case LossKind::cost_sensitive: return "cost_sensitive(" + fmt_g(c) + ")";
    case LossKind::winkler: return "winkler(" + fmt_g(c) + ")";
  }
  return "?";
}

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::log: return "log";
    case LossKind::brier: return "brier";
    case LossKind::cost_sensitive: return "cost_sensitive";
    case LossKind::winkler: return "winkler";
  }
  return "?";
}

LossKind loss_kind_from_string(const std::string& s) {
  if (s == "log") return LossKind::log;
  if (s == "brier") return LossKind::brier;
  if (s == "cost_sensitive") return LossKind::cost_sensitive;
  if (s == "winkler") return LossKind::winkler;
  throw DomainError("unknown loss kind '" + s + "'");
}

LossMatrix cost_sensitive_matrix(double c, const OutcomeSpace& space) {
  check_c(c);
  if (!space.has_binary_labels()) throw DomainError("cost-sensitive loss needs binary labels");
  std::vector<std::vector<double>> e(2, std::vector<double>(space.size(), 0.0));
  for (std::size_t w = 0; w < space.size(); ++w) {
    if (space.label_of(w) == 1.0) {
      e[0][w] = 1.0 - c;
    } else {
      e[1][w] = c;
    }
  }
  return LossMatrix(std::move(e), {"a=0", "a=1"});
}

double winkler_loss(double c, double a, double y, bool smoothed, double smooth_f) {
  const double big_a = (1.0 - c) * (1.0 - c);  // l2(c, 1)
  const double big_b = c * c;                  // l2(c, 0)
  const double num = (a - y) * (a - y) - (c - y) * (c - y);
  double t;
  if (smoothed) {
    const double alpha = sigmoid(smooth_f * (a - c));
    t = -alpha * big_a - (1.0 - alpha) * big_b;
  } else {
    t = a >= c ? -big_a : -big_b;
  }
  return 1.0 - num / t;
}

double winkler_gradient(double c, double a, double y, double smooth_f) {
  const double big_a = (1.0 - c) * (1.0 - c);
  const double big_b = c * c;
  const double num = (a - y) * (a - y) - (c - y) * (c - y);
  const double dnum = 2.0 * (a - y);
  const double alpha = sigmoid(smooth_f * (a - c));
  const double t = -alpha * big_a - (1.0 - alpha) * big_b;
  const double dt = -smooth_f * alpha * (1.0 - alpha) * (big_a - big_b);
  return -(dnum * t - num * dt) / (t * t);
}

LossMatrix discretize_action_space(const ParametricBinaryLoss& loss, std::size_t grid_n,
                                   const OutcomeSpace& space) {
  if (grid_n < 2) throw DomainError("grid_n must be at least 2");
  if (!space.has_binary_labels()) throw DomainError("parametric losses need binary labels");
  loss.validate();
  std::vector<std::vector<double>> e;
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < grid_n; ++j) {
    const double a = static_cast<double>(j) / static_cast<double>(grid_n - 1);
    std::vector<double> row(space.size());
    for (std::size_t w = 0; w < space.size(); ++w) row[w] = loss.value(a, space.label_of(w));
    e.push_back(std::move(row));
    char buf[32];
    std::snprintf(buf, sizeof buf, "a=%.6g", a);
    labels.emplace_back(buf);
  }
  return LossMatrix(std::move(e), std::move(labels));
}

}  // namespace iprob
