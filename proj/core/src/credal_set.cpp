#include "iprob/credal_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "iprob/error.hpp"
#include "iprob/random.hpp"

namespace iprob {

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite entry");
  }
}

void require_len(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": length " + std::to_string(a) +
                         " vs " + std::to_string(b));
  }
}

}  // namespace

Gamble::Gamble(std::vector<double> values) : values_(std::move(values)) {
  require_finite(values_, "gamble");
}

Gamble Gamble::constant(std::size_t k, double c) { return Gamble(std::vector<double>(k, c)); }

Gamble Gamble::indicator(std::size_t k, std::span<const std::size_t> event) {
  std::vector<double> v(k, 0.0);
  for (std::size_t i : event) {
    if (i >= k) throw DomainError("event index " + std::to_string(i) + " out of range");
    v[i] = 1.0;
  }
  return Gamble(std::move(v));
}

double Gamble::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Gamble::max() const { return *std::max_element(values_.begin(), values_.end()); }

Gamble Gamble::operator-() const {
  std::vector<double> v(values_);
  for (double& x : v) x = -x;
  return Gamble(std::move(v));
}

Gamble operator+(const Gamble& a, const Gamble& b) {
  require_len(a.size(), b.size(), "gamble sum");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return Gamble(std::move(v));
}

Gamble operator-(const Gamble& a, const Gamble& b) { return a + (-b); }

Gamble operator+(const Gamble& a, double c) {
  std::vector<double> v(a.values_);
  for (double& x : v) x += c;
  return Gamble(std::move(v));
}

Gamble operator-(const Gamble& a, double c) { return a + (-c); }

Gamble operator*(double c, const Gamble& a) {
  std::vector<double> v(a.values_);
  for (double& x : v) x *= c;
  return Gamble(std::move(v));
}

Gamble operator*(const Gamble& a, const Gamble& b) {
  require_len(a.size(), b.size(), "gamble product");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  return Gamble(std::move(v));
}

ProbVec ProbVec::from(std::vector<double> raw) {
  double sum = 0.0;
  for (double x : raw) {
    if (!std::isfinite(x)) throw DomainError("probability vector: non-finite entry");
    if (x < -kNegativeClampTol) {
      throw DomainError("probability vector: negative entry " + std::to_string(x));
    }
    sum += std::max(x, 0.0);
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    throw DomainError("probability vector: entries sum to " + std::to_string(sum));
  }
  return normalized(std::move(raw));
}

ProbVec ProbVec::normalized(std::vector<double> weights) {
  if (weights.size() < 2) throw DimensionError("probability vector needs k >= 2");
  double sum = 0.0;
  for (double& x : weights) {
    if (!std::isfinite(x) || x < -kNegativeClampTol) {
      throw DomainError("probability weights must be finite and nonnegative");
    }
    x = std::max(x, 0.0);
    sum += x;
  }
  if (!(sum > 0.0)) throw DomainError("probability weights have zero total mass");
  for (double& x : weights) x /= sum;
  return ProbVec(std::move(weights));
}

ProbVec ProbVec::point_mass(std::size_t k, std::size_t outcome) {
  if (outcome >= k) throw DomainError("point mass outside outcome space");
  std::vector<double> p(k, 0.0);
  p[outcome] = 1.0;
  return normalized(std::move(p));
}

ProbVec ProbVec::uniform(std::size_t k) {
  return normalized(std::vector<double>(k, 1.0));
}

double ProbVec::expectation(const Gamble& z) const {
  require_len(z.size(), p_.size(), "expectation");
  double s = 0.0;
  for (std::size_t i = 0; i < p_.size(); ++i) s += p_[i] * z[i];
  return s;
}

double ProbVec::probability(std::span<const std::size_t> event) const {
  return expectation(Gamble::indicator(p_.size(), event));
}

CredalSet::CredalSet(SpacePtr space, std::vector<ProbVec> vertices)
    : space_(std::move(space)), vertices_(std::move(vertices)) {
  if (!space_) throw DomainError("credal set without outcome space");
  if (vertices_.empty()) throw DomainError("credal set needs at least one vertex");
  for (const auto& v : vertices_) require_len(v.size(), space_->size(), "credal vertex");
}

CredalSet CredalSet::singleton(SpacePtr space, ProbVec p) {
  return CredalSet(std::move(space), {std::move(p)});
}

CredalSet CredalSet::from_rows(SpacePtr space, const std::vector<std::vector<double>>& rows) {
  std::vector<ProbVec> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(ProbVec::from(r));
  return CredalSet(std::move(space), std::move(v));
}

CredalSet CredalSet::with_vertex(ProbVec p) const {
  auto v = vertices_;
  v.push_back(std::move(p));
  return CredalSet(space_, std::move(v));
}

AttainedExpectation upper_expectation_attained(const CredalSet& c, const Gamble& z) {
  require_len(z.size(), c.k(), "upper expectation");
  AttainedExpectation best{c.vertex(0).expectation(z), 0};
  for (std::size_t i = 1; i < c.vertex_count(); ++i) {
    const double e = c.vertex(i).expectation(z);
    if (e > best.value) best = {e, i};
  }
  return best;
}

double upper_expectation(const CredalSet& c, const Gamble& z) {
  return upper_expectation_attained(c, z).value;
}

double lower_expectation(const CredalSet& c, const Gamble& z) {
  return -upper_expectation(c, -z);
}

double upper_probability(const CredalSet& c, std::span<const std::size_t> event) {
  return upper_expectation(c, Gamble::indicator(c.k(), event));
}

double lower_probability(const CredalSet& c, std::span<const std::size_t> event) {
  return lower_expectation(c, Gamble::indicator(c.k(), event));
}

ProbVec mixture(const CredalSet& c, std::span<const double> lambda) {
  require_len(lambda.size(), c.vertex_count(), "mixture weights");
  double total = 0.0;
  for (double l : lambda) {
    if (!std::isfinite(l) || l < -1e-9) throw DomainError("mixture weight outside simplex");
    total += l;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("mixture weights do not sum to 1");
  std::vector<double> p(c.k(), 0.0);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const double l = std::max(lambda[i], 0.0);
    if (l == 0.0) continue;
    const auto v = c.vertex(i).values();
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += l * v[j];
  }
  return ProbVec::normalized(std::move(p));
}

std::vector<Gamble> hull_test_battery(std::size_t k) {
  std::vector<Gamble> out;
  if (k <= 12) {
    const std::uint32_t full = (1u << k) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      std::vector<double> v(k);
      for (std::size_t i = 0; i < k; ++i) v[i] = (mask >> i) & 1u ? 1.0 : 0.0;
      out.emplace_back(std::move(v));
    }
  }
  CounterRng rng(derive_seed(0x6a09e667f3bcc908ULL, "hull-battery", k));
  for (int g = 0; g < 256; ++g) {
    std::vector<double> v(k);
    for (double& x : v) x = 2.0 * rng.uniform() - 1.0;
    out.emplace_back(std::move(v));
  }
  return out;
}

void require_same_space(const CredalSet& a, const CredalSet& b) {
  if (!same_space(a.space_ptr(), b.space_ptr())) {
    throw DimensionError("credal sets live on different outcome spaces");
  }
}

std::optional<Gamble> separating_gamble(const CredalSet& a, const CredalSet& b) {
  require_same_space(a, b);
  for (auto& z : hull_test_battery(a.k())) {
    if (std::abs(upper_expectation(a, z) - upper_expectation(b, z)) > kHullTol) return z;
  }
  return std::nullopt;
}

bool hull_equivalent(const CredalSet& a, const CredalSet& b) {
  return !separating_gamble(a, b).has_value();
}

}  // namespace iprob
