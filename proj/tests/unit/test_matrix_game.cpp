#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "iprob/error.hpp"
#include "iprob/matrix_game.hpp"
#include "random_instances.hpp"

using namespace iprob;

namespace {

PayoffMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  PayoffMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

// max over row strategies on a 1/n grid of the worst column; two rows only.
double two_row_value(const PayoffMatrix& m, int n = 100000) {
  double best = -std::numeric_limits<double>::infinity();
  for (int t = 0; t <= n; ++t) {
    const double x = static_cast<double>(t) / n;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m.cols; ++j) worst = std::min(worst, x * m(0, j) + (1 - x) * m(1, j));
    best = std::max(best, worst);
  }
  return best;
}

}  // namespace

TEST_CASE("small games with known values") {
  const auto pennies = solve_game_simplex(from_rows({{1, -1}, {-1, 1}}));
  CHECK(pennies.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pennies.row_strategy[0] == doctest::Approx(0.5));
  CHECK(pennies.col_strategy[0] == doctest::Approx(0.5));

  const auto g = solve_game_simplex(from_rows({{3, -1}, {-2, 1}}));
  CHECK(g.value == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  CHECK(g.row_strategy[0] == doctest::Approx(3.0 / 7.0));
  CHECK(g.gap <= 1e-12);

  const auto saddle = solve_game_simplex(from_rows({{1, 2}, {0, 3}}));
  CHECK(saddle.value == doctest::Approx(1.0));
  CHECK(saddle.row_strategy[0] == doctest::Approx(1.0));
  CHECK(saddle.col_strategy[0] == doctest::Approx(1.0));

  const auto rps = solve_game_simplex(from_rows({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}));
  CHECK(std::abs(rps.value) < 1e-12);
  for (double x : rps.row_strategy) CHECK(x == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("single row or column") {
  const auto row = solve_game_simplex(from_rows({{4, 2, 7}}));
  CHECK(row.value == doctest::Approx(2.0));
  CHECK(row.col_strategy[1] == doctest::Approx(1.0));
  const auto col = solve_game_simplex(from_rows({{4}, {2}, {7}}));
  CHECK(col.value == doctest::Approx(7.0));
  CHECK(col.row_strategy[2] == doctest::Approx(1.0));
}

TEST_CASE("simplex certificates on random games") {
  oracles::Gen gen(77);
  for (int t = 0; t < 300; ++t) {
    PayoffMatrix m(gen.index(1, 6), gen.index(1, 6));
    for (double& v : m.data) v = gen.uniform(-5.0, 5.0);
    const auto s = solve_game_simplex(m);
    REQUIRE(s.gap <= 1e-9);
    REQUIRE(s.lower <= s.value + 1e-12);
    REQUIRE(s.value <= s.upper + 1e-12);
    double sum = 0.0;
    for (double x : s.row_strategy) {
      REQUIRE(x >= -1e-12);
      sum += x;
    }
    REQUIRE(sum == doctest::Approx(1.0));
    if (m.rows == 2) REQUIRE(std::abs(s.value - two_row_value(m)) < 1e-4);
  }
}

TEST_CASE("evaluate_strategies computes both security levels") {
  const auto m = from_rows({{3, -1}, {-2, 1}});
  GameSolution s;
  s.row_strategy = {1.0, 0.0};
  s.col_strategy = {0.5, 0.5};
  evaluate_strategies(m, s);
  CHECK(s.lower == doctest::Approx(-1.0));
  CHECK(s.upper == doctest::Approx(1.0));
  CHECK(s.gap == doctest::Approx(2.0));
}

TEST_CASE("multiplicative weights approaches the simplex value") {
  oracles::Gen gen(78);
  for (int t = 0; t < 20; ++t) {
    PayoffMatrix m(3, 3);
    for (double& v : m.data) v = gen.uniform();
    const auto exact = solve_game_simplex(m);
    const auto mwu = solve_game_mwu(m, 1e-3, 2'000'000);
    CHECK(mwu.gap <= 1e-3);
    CHECK(std::abs(mwu.value - exact.value) <= 1e-3);
  }
  PayoffMatrix hard(2, 2);
  hard.data = {3.0, -1.0, -2.0, 1.0};
  CHECK_THROWS_AS(solve_game_mwu(hard, 1e-12, 10), NumericError);
}
