#pragma once

#include <cstddef>
#include <vector>

namespace iprob {

// Dense row-major payoff matrix.  The row player receives the payoff and
// maximizes; the column player minimizes.
struct PayoffMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  PayoffMatrix() = default;
  PayoffMatrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct GameSolution {
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  double value = 0.0;
  double lower = 0.0;  // min_j (x^T M)_j: guaranteed to the row player
  double upper = 0.0;  // max_i (M y)_i: conceded by the column player
  double gap = 0.0;    // upper - lower, >= 0 up to rounding
  std::size_t iterations = 0;
};

// Both security levels of the given mixed strategies.
void evaluate_strategies(const PayoffMatrix& m, GameSolution& s);

// Exact solution by a dense tableau simplex with Bland's pivoting rule.
// Throws NumericError if the pivot budget is exhausted.
GameSolution solve_game_simplex(const PayoffMatrix& m);

// Multiplicative-weights self-play on both sides; averaged strategies.  Stops
// once the gap falls below tol, throws NumericError (with the last gap) after
// max_iter rounds otherwise.
GameSolution solve_game_mwu(const PayoffMatrix& m, double tol, std::size_t max_iter);

}  // namespace iprob
