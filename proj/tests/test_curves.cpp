#include "triage/critical_curves.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "testutil.hpp"

using triage::CriticalCurveSet;
using triage::RateFunction;
using triage::ScoreCdf;

namespace {

// Separable solution of d alpha/dt = -lambda (1 - alpha)^2 / 2 with
// alpha(T) = 0: the single-curve system for a uniform score CDF under a
// homogeneous rate.
double closed_form_uniform(double lambda, double horizon, double t) {
  return 1.0 - 2.0 / (lambda * (horizon - t) + 2.0);
}

}  // namespace

TEST_CASE("single curve matches the separable closed form") {
  const auto rate = RateFunction::constant(1.0, 2.0);
  const auto curves = triage::solve_curves(rate, ScoreCdf::uniform(), 1);
  CHECK(curves.threshold_at(1, 0.0) ==
        doctest::Approx(closed_form_uniform(1.0, 2.0, 0.0)).epsilon(1e-6));
  CHECK(std::abs(curves.threshold_at(1, 0.0) - 0.5) < 1e-4);

  double max_err = 0.0;
  for (std::size_t g = 0; g < curves.grid_size(); ++g) {
    const double t = curves.grid_times()[g];
    max_err = std::max(max_err, std::abs(curves.curve(1)[g] -
                                         closed_form_uniform(1.0, 2.0, t)));
  }
  CHECK(max_err < 1e-4);
}

TEST_CASE("terminal condition is exactly zero") {
  const auto rate = RateFunction({0.0, 1.0, 3.0}, {2.0, 0.5, 4.0});
  const auto curves = triage::solve_curves(rate, ScoreCdf::uniform(), 4, 512);
  for (int j = 1; j <= 4; ++j) {
    CHECK(curves.curve(j).back() == 0.0);
    CHECK(curves.threshold_at(j, rate.tau()) == 0.0);
  }
}

TEST_CASE("zero intensity leaves every curve at zero") {
  const auto rate = RateFunction::constant(0.0, 3.0);
  const auto curves = triage::solve_curves(rate, ScoreCdf::uniform(), 3, 256);
  for (int j = 1; j <= 3; ++j) {
    for (double v : curves.curve(j)) CHECK(v == 0.0);
  }
}

TEST_CASE("curves are ordered, bounded and nonincreasing in time") {
  std::mt19937_64 gen(611);
  std::uniform_int_distribution<int> budget_dist(1, 30);
  for (int rep = 0; rep < 20; ++rep) {
    const auto rate = triage::test::random_rate(gen, 3.0, 40.0);
    const auto fs = triage::test::random_cdf(gen);
    const int n = budget_dist(gen);
    const auto curves = triage::solve_curves(rate, fs, n, 1024);
    for (int j = 1; j <= n; ++j) {
      const auto& row = curves.curve(j);
      for (std::size_t g = 0; g < row.size(); ++g) {
        CHECK(row[g] >= 0.0);
        CHECK(row[g] <= 1.0);
        if (g + 1 < row.size()) CHECK(row[g] >= row[g + 1] - 1e-12);
        if (j > 1) CHECK(curves.curve(j - 1)[g] >= row[g] - 1e-12);
      }
    }
  }
}

TEST_CASE("doubling the grid changes thresholds by less than 1e-4") {
  const auto rate = RateFunction({0.0, 1.5, 4.0}, {30.0, 80.0, 10.0});
  const ScoreCdf fs({0.0, 0.3, 0.7, 1.0}, {0.0, 0.55, 0.8, 1.0});
  const auto coarse = triage::solve_curves(rate, fs, 6, 4096);
  const auto fine = triage::solve_curves(rate, fs, 6, 8192);
  double max_diff = 0.0;
  for (int j = 1; j <= 6; ++j) {
    for (std::size_t g = 0; g < coarse.grid_size(); ++g) {
      const double t = coarse.grid_times()[g];
      max_diff = std::max(
          max_diff, std::abs(coarse.curve(j)[g] - fine.threshold_at(j, t)));
    }
  }
  CHECK(max_diff < 1e-4);
}

TEST_CASE("the system is lower-triangular so prefixes are reusable") {
  const auto rate = RateFunction({0.0, 2.0}, {25.0, 5.0});
  const ScoreCdf fs({0.05, 0.4, 0.95}, {0.0, 0.5, 1.0});
  const auto big = triage::solve_curves(rate, fs, 8, 1024);
  const auto small = triage::solve_curves(rate, fs, 3, 1024);
  for (int j = 1; j <= 3; ++j) {
    for (std::size_t g = 0; g < big.grid_size(); ++g) {
      CHECK(std::abs(big.curve(j)[g] - small.curve(j)[g]) <= 1e-9);
    }
  }
  const auto sliced = big.sliced(3);
  CHECK(sliced.budget() == 3);
  CHECK(sliced.curve(3) == big.curve(3));
}

TEST_CASE("threshold lookup interpolates the grid") {
  const auto rate = RateFunction::constant(10.0, 1.0);
  const auto curves = triage::solve_curves(rate, ScoreCdf::uniform(), 5, 128);
  const auto& grid = curves.grid_times();
  CHECK(curves.threshold_at(2, grid[40]) ==
        doctest::Approx(curves.curve(2)[40]).epsilon(1e-15));
  const double mid = 0.5 * (grid[40] + grid[41]);
  CHECK(curves.threshold_at(2, mid) ==
        doctest::Approx(0.5 * (curves.curve(2)[40] + curves.curve(2)[41]))
            .epsilon(1e-12));
  CHECK(curves.threshold_at(1, 0.37) >= curves.threshold_at(5, 0.37));
  CHECK_THROWS_AS(curves.threshold_at(0, 0.5), std::out_of_range);
  CHECK_THROWS_AS(curves.threshold_at(6, 0.5), std::out_of_range);
  CHECK_THROWS_AS(curves.threshold_at(1, 1.5), std::domain_error);
}

TEST_CASE("save and load round trip") {
  const auto rate = RateFunction({0.0, 2.0}, {12.0, 3.0});
  const ScoreCdf fs({0.1, 0.6, 0.9}, {0.0, 0.7, 1.0});
  const auto curves = triage::solve_curves(rate, fs, 3, 64);
  const std::string path = "curves_roundtrip_test.csv";
  curves.save(path);
  const auto back = CriticalCurveSet::load(path);
  CHECK(back.budget() == curves.budget());
  CHECK(back.grid_size() == curves.grid_size());
  CHECK(back.rate_hash() == curves.rate_hash());
  CHECK(back.score_hash() == curves.score_hash());
  for (int j = 1; j <= 3; ++j) {
    for (std::size_t g = 0; g < curves.grid_size(); ++g) {
      CHECK(back.curve(j)[g] == curves.curve(j)[g]);
    }
  }
  std::remove(path.c_str());
  std::remove((path + ".meta.json").c_str());
}
