#include "triage/rate_function.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "testutil.hpp"

using triage::RateFunction;
using triage::RateInterp;

TEST_CASE("cumulative of a constant rate is the rectangle area") {
  const auto rf = RateFunction::constant(2.0, 3.0);
  CHECK(rf.cumulative(3.0) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(rf.cumulative(0.0) == 0.0);
  CHECK(rf.cumulative(1.5) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("cumulative of a linear ramp matches quadrature") {
  const RateFunction rf({0.0, 1.0}, {0.0, 2.0});
  CHECK(rf.cumulative(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  const double quad = triage::test::simpson(
      [&rf](double t) { return rf.rate(t); }, 0.0, 1.0, 1 << 12);
  CHECK(rf.cumulative(1.0) == doctest::Approx(quad).epsilon(1e-10));

  // A knottier profile against the same oracle at interior points.
  const RateFunction pw({0.0, 0.5, 2.0, 3.0}, {1.0, 4.0, 0.0, 2.5});
  for (double t : {0.3, 0.5, 1.1, 2.0, 2.7, 3.0}) {
    const double q = triage::test::simpson(
        [&pw](double u) { return pw.rate(u); }, 0.0, t, 1 << 14);
    CHECK(pw.cumulative(t) == doctest::Approx(q).epsilon(1e-9));
  }
}

TEST_CASE("cumulative rejects arguments outside the horizon") {
  const auto rf = RateFunction::constant(1.0, 2.0);
  CHECK_THROWS_AS(rf.cumulative(-0.1), std::domain_error);
  CHECK_THROWS_AS(rf.cumulative(2.1), std::domain_error);
}

TEST_CASE("inverse cumulative inverts the constant-rate case") {
  const auto rf = RateFunction::constant(2.0, 3.0);
  CHECK(rf.inverse_cumulative(6.0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(rf.inverse_cumulative(0.0) == 0.0);
  CHECK_THROWS_AS(rf.inverse_cumulative(6.0 + 1e-9), std::out_of_range);
  CHECK_THROWS_AS(rf.inverse_cumulative(-1e-9), std::domain_error);
}

TEST_CASE("inverse cumulative lands on the left edge of a zero-rate gap") {
  // Rate 2 on [0,1], zero on [1,2], rate 2 on [2,3].
  const RateFunction rf({0.0, 1.0 - 1e-9, 1.0, 2.0, 2.0 + 1e-9, 3.0},
                        {2.0, 2.0, 0.0, 0.0, 2.0, 2.0});
  const double at_gap = rf.cumulative(1.0);
  CHECK(rf.inverse_cumulative(at_gap) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rf.inverse_cumulative(at_gap) <= 1.0 + 1e-9);
}

TEST_CASE("inverse composed with cumulative is the identity where rate > 0") {
  std::mt19937_64 gen(20260809);
  for (int rep = 0; rep < 50; ++rep) {
    const auto rf = triage::test::random_rate(gen, 4.0, 5.0);
    std::uniform_real_distribution<double> ut(0.0, 4.0);
    for (int i = 0; i < 40; ++i) {
      const double t = ut(gen);
      if (rf.rate(t) <= 1e-6) continue;
      const double back = rf.inverse_cumulative(rf.cumulative(t));
      CHECK(back == doctest::Approx(t).epsilon(1e-9));
    }
  }
}

TEST_CASE("piecewise-constant interpolation integrates as step areas") {
  const RateFunction rf({0.0, 1.0, 3.0}, {2.0, 5.0, 7.0},
                        RateInterp::kConstant);
  CHECK(rf.rate(0.5) == 2.0);
  CHECK(rf.rate(1.0) == 5.0);
  CHECK(rf.cumulative(3.0) == doctest::Approx(2.0 + 10.0).epsilon(1e-12));
  CHECK(rf.inverse_cumulative(2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rf.inverse_cumulative(7.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("construction rejects malformed knot vectors") {
  CHECK_THROWS_AS(RateFunction({0.0, 1.0}, {1.0, -0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RateFunction({0.5, 1.0}, {1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RateFunction({0.0, 1.0, 1.0}, {1.0, 1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RateFunction({0.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("json round trip preserves knots and interpolation mode") {
  const RateFunction rf({0.0, 0.25, 2.0}, {1.0, 0.0, 3.5});
  const auto back = RateFunction::from_json(rf.to_json());
  CHECK(back.knot_times() == rf.knot_times());
  CHECK(back.knot_rates() == rf.knot_rates());
  CHECK(back.interp() == rf.interp());
  CHECK(back.content_hash() == rf.content_hash());

  const RateFunction step({0.0, 1.0}, {2.0, 2.0}, RateInterp::kConstant);
  CHECK(RateFunction::from_json(step.to_json()).interp() ==
        RateInterp::kConstant);
}
