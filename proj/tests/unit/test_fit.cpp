#include <doctest.h>

#include <cmath>

#include "mlab/error.hpp"
#include "mlab/fit.hpp"

using namespace mlab;
using doctest::Approx;

TEST_SUITE("fit") {

TEST_CASE("pure powers") {
  std::vector<SlopeRow> rows;
  for (double n : {8.0, 16.0, 32.0, 64.0, 128.0}) rows.push_back({n, n * n});
  const auto f = fit_slope(rows);
  CHECK(std::abs(f.slope - 2.0) < 1e-12);
  CHECK(f.residual < 1e-12);
  CHECK(f.used == 5);
}

TEST_CASE("log correction is exact") {
  std::vector<SlopeRow> rows;
  for (double n : {8.0, 16.0, 32.0, 64.0, 128.0, 256.0}) rows.push_back({n, n * std::pow(std::log(n), -2.0)});
  CHECK(std::abs(fit_slope(rows, -2.0).slope - 1.0) < 1e-9);
  CHECK(std::abs(fit_slope(rows, 0.0).slope - 1.0) > 0.2);
}

TEST_CASE("constant rows") {
  std::vector<SlopeRow> rows;
  for (double n : {4.0, 8.0, 16.0, 32.0}) rows.push_back({n, 3.5});
  const auto f = fit_slope(rows);
  CHECK(std::abs(f.slope) < 1e-12);
  CHECK(f.intercept == Approx(std::log(3.5)));
}

TEST_CASE("dropped rows and preconditions") {
  std::vector<SlopeRow> rows{{2, 1.0}, {4, 0.0}, {8, 8.0}, {16, 16.0}, {32, 32.0}, {64, 64.0}};
  const auto f = fit_slope(rows);
  CHECK(f.used == 5);
  CHECK_FALSE(f.notes.empty());
  CHECK_THROWS_AS((void)fit_slope({{1, 1}, {2, 2}, {3, 3}}), Error);
  CHECK_THROWS_AS((void)fit_slope({{1, 1}, {3, 2}, {2, 3}, {4, 4}}), Error);
}

}  // TEST_SUITE
