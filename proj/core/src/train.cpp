#include "iprob/train.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "iprob/error.hpp"
#include "iprob/random.hpp"

namespace iprob {

void TrainConfig::validate() const {
  if (n_outer == 0 || n_inner == 0 || batch == 0 || grad_batches == 0 || erm_iters == 0) {
    throw ConfigError("training iteration counts and batch sizes must be positive");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("eta must be positive and finite");
  if (!(lr > 0.0) || !std::isfinite(lr)) throw ConfigError("lr must be positive and finite");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(adam_eps > 0.0)) {
    throw ConfigError("invalid Adam constants");
  }
}

Adam::Adam(std::size_t n, double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps), m_(n, 0.0), v_(n, 0.0) {}

void Adam::reset() {
  std::fill(m_.begin(), m_.end(), 0.0);
  std::fill(v_.begin(), v_.end(), 0.0);
  t_ = 0;
}

void Adam::step(std::vector<double>& params, const std::vector<double>& grad) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
    params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps_);
  }
}

namespace {

std::vector<double> flatten(const ModelParams& m) {
  std::vector<double> p(m.weights);
  p.push_back(m.bias);
  return p;
}

void unflatten(const std::vector<double>& p, ModelParams& m) {
  std::copy(p.begin(), p.end() - 1, m.weights.begin());
  m.bias = p.back();
}

// Accumulates scale * d(mean loss)/d(params) into grad; returns the mean loss.
double accumulate(const std::vector<double>& p, const GroupedDataset& ds,
                  std::span<const std::size_t> rows, const ParametricBinaryLoss& loss,
                  double scale, std::vector<double>* grad) {
  const std::size_t d = ds.dim();
  const double inv = 1.0 / static_cast<double>(rows.size());
  double total = 0.0;
  for (std::size_t r : rows) {
    const double* x = ds.features.data() + r * d;
    double z = p[d];
    for (std::size_t j = 0; j < d; ++j) z += p[j] * x[j];
    const auto ls = loss_at_logit(loss, z, static_cast<double>(ds.labels[r]));
    total += ls.loss;
    if (grad) {
      const double s = scale * inv * ls.dz;
      for (std::size_t j = 0; j < d; ++j) (*grad)[j] += s * x[j];
      (*grad)[d] += s;
    }
  }
  return total * inv;
}

void check_finite(double v, const char* what, std::size_t iter) {
  if (!std::isfinite(v)) {
    throw NumericError(std::string(what) + ": non-finite loss at iteration " + std::to_string(iter));
  }
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = i;
  return r;
}

// Rows of one group drawn uniformly with replacement, or all of them.
class BatchSampler {
 public:
  BatchSampler(std::vector<std::size_t> rows, std::size_t batch, bool full, std::uint64_t seed)
      : rows_(std::move(rows)), batch_(full ? rows_.size() : batch), full_(full), rng_(seed) {
    buf_.resize(batch_);
  }

  std::span<const std::size_t> next() {
    if (full_) return rows_;
    for (auto& b : buf_) b = rows_[rng_.uniform_index(rows_.size())];
    return buf_;
  }

 private:
  std::vector<std::size_t> rows_;
  std::size_t batch_;
  bool full_;
  CounterRng rng_;
  std::vector<std::size_t> buf_;
};

}  // namespace

double batch_loss_and_gradient(const ModelParams& m, const GroupedDataset& ds,
                               std::span<const std::size_t> rows, const ParametricBinaryLoss& loss,
                               std::vector<double>* grad) {
  if (m.dim() != ds.dim()) throw DimensionError("model and dataset dimensions differ");
  std::vector<std::size_t> every;
  if (rows.empty()) {
    every = all_rows(ds.size());
    rows = every;
  }
  if (rows.empty()) throw DomainError("loss over zero rows");
  const auto p = flatten(m);
  if (grad) grad->assign(p.size(), 0.0);
  return accumulate(p, ds, rows, loss, 1.0, grad);
}

ErmResult train_erm(const GroupedDataset& ds, const ParametricBinaryLoss& loss,
                    const TrainConfig& cfg) {
  cfg.validate();
  loss.validate();
  if (ds.size() == 0) throw DomainError("ERM on an empty dataset");
  ErmResult out;
  out.params = ModelParams::zeros(ds.dim());
  std::vector<double> p = flatten(out.params);
  std::vector<double> grad(p.size());
  Adam opt(p.size(), cfg.lr, cfg.beta1, cfg.beta2, cfg.adam_eps);
  BatchSampler sampler(all_rows(ds.size()), cfg.batch, cfg.full_batch,
                       derive_seed(cfg.seed, "erm-batch"));
  out.loss_trace.reserve(cfg.erm_iters);
  for (std::size_t it = 0; it < cfg.erm_iters; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    const double l = accumulate(p, ds, sampler.next(), loss, 1.0, &grad);
    check_finite(l, "ERM", it);
    out.loss_trace.push_back(l);
    opt.step(p, grad);
  }
  unflatten(p, out.params);
  out.final_loss = batch_loss_and_gradient(out.params, ds, {}, loss, nullptr);
  return out;
}

std::vector<double> exponentiated_update(const std::vector<double>& lambda,
                                         const std::vector<double>& losses, double eta) {
  if (lambda.size() != losses.size() || lambda.empty()) throw DimensionError("lambda/loss sizes differ");
  std::vector<double> logw(lambda.size());
  for (std::size_t g = 0; g < lambda.size(); ++g) {
    logw[g] = std::log(std::max(lambda[g], DBL_MIN)) + eta * losses[g];
  }
  const double mx = *std::max_element(logw.begin(), logw.end());
  std::vector<double> out(lambda.size());
  double s = 0.0;
  for (std::size_t g = 0; g < out.size(); ++g) s += (out[g] = std::max(std::exp(logw[g] - mx), DBL_MIN));
  for (double& v : out) v /= s;
  return out;
}

DroResult train_dro(const GroupedDataset& ds, const ParametricBinaryLoss& loss,
                    const TrainConfig& cfg) {
  cfg.validate();
  loss.validate();
  ds.require_nonempty_groups();
  const std::size_t ng = ds.group_count;
  const auto by_group = ds.group_rows();

  std::vector<BatchSampler> inner, outer;
  for (std::size_t g = 0; g < ng; ++g) {
    inner.emplace_back(by_group[g], cfg.batch, cfg.full_batch, derive_seed(cfg.seed, "dro-inner", g));
    outer.emplace_back(by_group[g], cfg.batch, cfg.full_batch, derive_seed(cfg.seed, "dro-outer", g));
  }

  DroResult out;
  out.params = ModelParams::zeros(ds.dim());
  std::vector<double> p = flatten(out.params);
  std::vector<double> grad(p.size());
  std::vector<double> lambda(ng, 1.0 / static_cast<double>(ng));
  Adam opt(p.size(), cfg.lr, cfg.beta1, cfg.beta2, cfg.adam_eps);
  out.trace.reserve(cfg.n_outer);

  for (std::size_t t = 0; t < cfg.n_outer; ++t) {
    opt.reset();
    for (std::size_t s = 0; s < cfg.n_inner; ++s) {
      std::fill(grad.begin(), grad.end(), 0.0);
      double l = 0.0;
      for (std::size_t g = 0; g < ng; ++g) {
        l += lambda[g] * accumulate(p, ds, inner[g].next(), loss, lambda[g], &grad);
      }
      check_finite(l, "DRO inner", t * cfg.n_inner + s);
      opt.step(p, grad);
    }
    DroRound round;
    round.iter = t;
    round.group_losses.assign(ng, 0.0);
    for (std::size_t g = 0; g < ng; ++g) {
      const std::size_t nb = cfg.full_batch ? 1 : cfg.grad_batches;
      for (std::size_t b = 0; b < nb; ++b) {
        round.group_losses[g] += accumulate(p, ds, outer[g].next(), loss, 0.0, nullptr);
      }
      round.group_losses[g] /= static_cast<double>(nb);
      check_finite(round.group_losses[g], "DRO outer", t);
      round.weighted_loss += lambda[g] * round.group_losses[g];
    }
    lambda = exponentiated_update(lambda, round.group_losses, cfg.eta);
    round.lambda = lambda;
    out.trace.push_back(std::move(round));
  }
  unflatten(p, out.params);
  out.lambda = lambda;
  for (std::size_t g = 0; g < ng; ++g) {
    out.final_group_losses.push_back(
        batch_loss_and_gradient(out.params, ds, by_group[g], loss, nullptr));
  }
  return out;
}

std::vector<ModelParams> fit_gbr(const GroupedDataset& ds, const ParametricBinaryLoss& loss,
                                 const TrainConfig& cfg) {
  ds.require_nonempty_groups();
  const auto by_group = ds.group_rows();
  std::vector<ModelParams> out;
  for (std::size_t g = 0; g < ds.group_count; ++g) {
    out.push_back(train_erm(ds.subset(by_group[g]), loss, cfg).params);
  }
  return out;
}

}  // namespace iprob
