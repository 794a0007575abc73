#include "iprob/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "iprob/error.hpp"

namespace iprob {

namespace {

constexpr double kPivotEps = 1e-12;

void check_payoffs(const PayoffMatrix& m) {
  if (m.rows == 0 || m.cols == 0 || m.data.size() != m.rows * m.cols) {
    throw DimensionError("empty or malformed payoff matrix");
  }
  for (double v : m.data) {
    if (!std::isfinite(v)) throw NumericError("non-finite payoff");
  }
}

void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double& x : v) {
    x = std::max(x, 0.0);
    s += x;
  }
  for (double& x : v) x /= s;
}

}  // namespace

void evaluate_strategies(const PayoffMatrix& m, GameSolution& s) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m.cols; ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) v += s.row_strategy[i] * m(i, j);
    lo = std::min(lo, v);
  }
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.rows; ++i) {
    double v = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) v += m(i, j) * s.col_strategy[j];
    hi = std::max(hi, v);
  }
  s.lower = lo;
  s.upper = hi;
  s.gap = std::max(0.0, hi - lo);
}

GameSolution solve_game_simplex(const PayoffMatrix& m) {
  check_payoffs(m);
  const std::size_t nr = m.rows;
  const std::size_t nc = m.cols;
  // Shift payoffs to be >= 1 so the value is positive, then solve
  //   max sum(w)  s.t.  M' w <= 1, w >= 0
  // whose optimum is 1 / value'; duals of the constraints give the row player.
  const double shift = 1.0 - *std::min_element(m.data.begin(), m.data.end());
  const std::size_t width = nc + nr + 1;
  std::vector<double> t((nr + 1) * width, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return t[r * width + c]; };
  std::vector<std::size_t> basis(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) at(i, j) = m(i, j) + shift;
    at(i, nc + i) = 1.0;
    at(i, width - 1) = 1.0;
    basis[i] = nc + i;
  }
  for (std::size_t j = 0; j < nc; ++j) at(nr, j) = -1.0;

  const std::size_t budget = 50 * (nr + nc) + 1000;
  std::size_t iter = 0;
  for (;; ++iter) {
    if (iter > budget) throw NumericError("simplex pivot budget exhausted");
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (at(nr, j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = nr;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nr; ++i) {
      const double a = at(i, enter);
      if (a <= kPivotEps) continue;
      const double ratio = at(i, width - 1) / a;
      if (ratio < best - 1e-15 ||
          (ratio <= best + 1e-15 && leave < nr && basis[i] < basis[leave])) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    // Bounded: every column of M' is positive, so a leaving row always exists.
    if (leave == nr) throw NumericError("simplex: unbounded direction");
    const double piv = at(leave, enter);
    for (std::size_t c = 0; c < width; ++c) at(leave, c) /= piv;
    for (std::size_t r = 0; r <= nr; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) at(r, c) -= f * at(leave, c);
    }
    basis[leave] = enter;
  }

  GameSolution s;
  s.iterations = iter;
  const double z = at(nr, width - 1);
  if (!(z > 0.0)) throw NumericError("simplex: non-positive objective");
  s.col_strategy.assign(nc, 0.0);
  for (std::size_t i = 0; i < nr; ++i) {
    if (basis[i] < nc) s.col_strategy[basis[i]] = at(i, width - 1) / z;
  }
  s.row_strategy.resize(nr);
  for (std::size_t i = 0; i < nr; ++i) s.row_strategy[i] = at(nr, nc + i) / z;
  normalize(s.col_strategy);
  normalize(s.row_strategy);
  s.value = 1.0 / z - shift;
  evaluate_strategies(m, s);
  return s;
}

GameSolution solve_game_mwu(const PayoffMatrix& m, double tol, std::size_t max_iter) {
  check_payoffs(m);
  if (max_iter == 0) throw DomainError("max_iter must be positive");
  const auto [lo_it, hi_it] = std::minmax_element(m.data.begin(), m.data.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  GameSolution s;
  if (range == 0.0) {
    s.row_strategy.assign(m.rows, 1.0 / static_cast<double>(m.rows));
    s.col_strategy.assign(m.cols, 1.0 / static_cast<double>(m.cols));
    s.value = lo;
    evaluate_strategies(m, s);
    return s;
  }
  const double n = static_cast<double>(std::max(m.rows, m.cols));
  const double eta = std::sqrt(8.0 * std::log(std::max(n, 2.0)) / static_cast<double>(max_iter));

  std::vector<double> lx(m.rows, 0.0), ly(m.cols, 0.0);
  std::vector<double> x(m.rows), y(m.cols);
  std::vector<double> sx(m.rows, 0.0), sy(m.cols, 0.0);
  auto softmax = [](const std::vector<double>& l, std::vector<double>& p) {
    const double mx = *std::max_element(l.begin(), l.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) sum += (p[i] = std::exp(l[i] - mx));
    for (double& v : p) v /= sum;
  };

  for (std::size_t t = 1; t <= max_iter; ++t) {
    softmax(lx, x);
    softmax(ly, y);
    for (std::size_t i = 0; i < m.rows; ++i) sx[i] += x[i];
    for (std::size_t j = 0; j < m.cols; ++j) sy[j] += y[j];
    for (std::size_t i = 0; i < m.rows; ++i) {
      double g = 0.0;
      for (std::size_t j = 0; j < m.cols; ++j) g += (m(i, j) - lo) / range * y[j];
      lx[i] += eta * g;
    }
    for (std::size_t j = 0; j < m.cols; ++j) {
      double g = 0.0;
      for (std::size_t i = 0; i < m.rows; ++i) g += x[i] * (m(i, j) - lo) / range;
      ly[j] -= eta * g;
    }
    if (t % 16 == 0 || t == max_iter) {
      s.row_strategy = sx;
      s.col_strategy = sy;
      normalize(s.row_strategy);
      normalize(s.col_strategy);
      evaluate_strategies(m, s);
      s.iterations = t;
      if (s.gap <= tol) {
        s.value = 0.5 * (s.lower + s.upper);
        return s;
      }
    }
  }
  throw NumericError("multiplicative weights did not reach gap " + std::to_string(tol) +
                     " in " + std::to_string(max_iter) + " rounds (last gap " +
                     std::to_string(s.gap) + ")");
}

}  // namespace iprob
