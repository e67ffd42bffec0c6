#include "triage/bounds.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "testutil.hpp"
#include "triage/policies.hpp"

using triage::OrderStatPdf;
using triage::RateFunction;
using triage::Rng;
using triage::ScoreCdf;
using triage::ScoreModel;

namespace {

ScoreModel no_skill_model(double beta) {
  return ScoreModel(beta, ScoreCdf::uniform(), ScoreCdf::uniform());
}

// F0 on [0, 0.5], F1 on [0.5, 1].
ScoreModel separated_model(double beta) {
  return ScoreModel(beta, ScoreCdf({0.0, 0.5}, {0.0, 1.0}),
                    ScoreCdf({0.5, 1.0}, {0.0, 1.0}));
}

}  // namespace

TEST_CASE("static bound hits both branches of the min") {
  // Uniform mixture; pick alpha so the above-threshold mass equals the
  // corrected capacity exactly.
  const auto model = no_skill_model(0.1);
  const double lambda = 100.0;
  const double k = 0.2;
  const double alpha = 1.0 - (k - 1.0 / lambda);  // 1 - F_S(alpha) = k - 1/L
  const double v = triage::bound_static(model, lambda, k, alpha);
  CHECK(v == doctest::Approx(1.0 - model.f1().cdf(alpha)).epsilon(1e-12));

  CHECK(triage::bound_static(model, lambda, 0.0, 0.3) == 0.0);
  CHECK(triage::bound_static(model, lambda, 0.005, 0.3) == 0.0);  // k < 1/L

  // No-skill reduction: any alpha collapses to the random bound.
  for (double a : {0.0, 0.25, 0.6}) {
    CHECK(triage::bound_static(model, lambda, k, a) ==
          doctest::Approx(k - 1.0 / lambda).epsilon(1e-12));
  }

  // Exhausted tail.
  CHECK(triage::bound_static(separated_model(0.2), lambda, k, 1.0) == 0.0);
}

TEST_CASE("optimal static threshold is the mixture quantile") {
  const auto model = no_skill_model(0.1);  // F_S uniform
  CHECK(triage::optimal_static_threshold(model, 0.1) ==
        doctest::Approx(0.9).epsilon(1e-12));
  CHECK(triage::optimal_static_threshold(model, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(triage::bound_static_optimal(model, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // k = 0 sits at the support supremum.
  CHECK(triage::optimal_static_threshold(model, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("static bound maximized over a dense grid matches the optimum") {
  const ScoreModel model(0.05, ScoreCdf({0.0, 0.2, 0.5, 0.6}, {0.0, 0.5, 0.97, 1.0}),
                         ScoreCdf({0.4, 0.7, 0.9, 1.0}, {0.0, 0.6, 0.95, 1.0}));
  const double k = 0.1;
  const double alpha_star = triage::optimal_static_threshold(model, k);
  const double opt = triage::bound_static_optimal(model, k);

  const int grid = 200;
  double best_v = -1.0, best_a = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double a = static_cast<double>(i) / grid;
    const double v = triage::bound_static_asymptotic(model, k, a);
    if (v > best_v) {
      best_v = v;
      best_a = a;
    }
  }
  const double spacing = 1.0 / grid;
  CHECK(std::abs(best_a - alpha_star) <= spacing + 1e-12);
  CHECK(best_v <= opt + 1e-12);
  CHECK(best_v >= opt - 2.0 * spacing);  // density is bounded by ~2 here

  // The corrected form converges to the same optimum for large Lambda.
  double best_exact = -1.0;
  for (int i = 0; i <= grid; ++i) {
    const double a = static_cast<double>(i) / grid;
    best_exact =
        std::max(best_exact, triage::bound_static(model, 1e7, k, a));
  }
  CHECK(best_exact == doctest::Approx(best_v).epsilon(1e-4));
}

TEST_CASE("random bound is linear with the 1/Lambda correction") {
  CHECK(triage::bound_random(100.0, 0.1) ==
        doctest::Approx(0.09).epsilon(1e-12));
  CHECK(triage::bound_random(100.0, 0.0) == 0.0);
  CHECK(triage::bound_random(3219.0, 0.1) ==
        doctest::Approx(0.1 - 1.0 / 3219.0).epsilon(1e-12));
  CHECK(triage::bound_random(3219.0, 0.1) ==
        doctest::Approx(0.0996893445).epsilon(1e-8));
}

TEST_CASE("random bound equals the no-skill static bound at the floor") {
  std::mt19937_64 gen(51);
  std::uniform_real_distribution<double> uk(0.0, 1.0);
  std::uniform_real_distribution<double> ul(2.0, 5000.0);
  const auto model = no_skill_model(0.3);
  for (int i = 0; i < 100; ++i) {
    const double k = uk(gen);
    const double lam = ul(gen);
    const double lhs = triage::bound_random(lam, k);
    const double rhs =
        triage::bound_static(model, lam, k, model.fs().support_min());
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("end-to-end upper bound saturates at k = beta") {
  CHECK(triage::upper_bound(0.035, 0.035) == doctest::Approx(1.0));
  CHECK(triage::upper_bound(0.035, 0.0175) == doctest::Approx(0.5));
  CHECK(triage::upper_bound(0.035, 0.0) == 0.0);
  CHECK(triage::upper_bound(0.5, 0.9) == 1.0);
}

TEST_CASE("order statistic pdf: identity case") {
  const ScoreCdf base({0.1, 0.4, 0.8}, {0.0, 0.7, 1.0});
  const OrderStatPdf os(base, 1, 1);
  for (double x : {0.12, 0.3, 0.5, 0.75}) {
    CHECK(os(x) == doctest::Approx(base.density(x)).epsilon(1e-12));
  }
}

TEST_CASE("order statistic pdf: uniform maximum of three") {
  const OrderStatPdf os(ScoreCdf::uniform(), 3, 3);
  CHECK(os(1.0) == doctest::Approx(3.0).epsilon(1e-12));
  for (double x : {0.2, 0.5, 0.9}) {
    CHECK(os(x) == doctest::Approx(3.0 * x * x).epsilon(1e-12));
  }
  const double mass = triage::test::simpson([&os](double x) { return os(x); },
                                            0.0, 1.0, 1 << 12);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("order statistic pdf normalizes for large ranks") {
  const ScoreCdf base({0.0, 0.25, 1.0}, {0.0, 0.6, 1.0});
  for (auto [n, i] : std::vector<std::pair<long long, long long>>{
           {3, 3}, {100, 90}, {3000, 2995}}) {
    const OrderStatPdf os(base, n, i);
    const double mass = triage::test::simpson(
        [&os](double x) { return os(x); }, 0.0, 1.0, 1 << 22);
    CHECK(std::abs(mass - 1.0) < 1e-6);
  }
}

TEST_CASE("dynamic bound degenerates to zero capacity") {
  const auto rate = RateFunction::constant(10.0, 5.0);
  const auto model = no_skill_model(0.1);
  const auto curves = triage::solve_curves(rate, model.fs(), 4, 256);
  Rng rng(1);
  const auto [v, se] = triage::bound_dynamic_mc(model, rate, curves, 0.0, 100, rng);
  CHECK(v == 0.0);
  CHECK(se == 0.0);
}

TEST_CASE("dynamic bound under no skill approaches the capacity fraction") {
  // Every q term is 1, so the value is E[inspections]/Lambda <= k, and with
  // abundant arrivals the budget is spent: value -> n_k/Lambda.
  const auto rate = RateFunction::constant(100.0, 5.0);  // Lambda = 500
  const auto model = no_skill_model(0.2);
  const int n_k = triage::capacity_for(0.1, rate.total_mass());
  const auto curves = triage::solve_curves(rate, model.fs(), n_k, 2048);
  Rng rng(2);
  const auto [v, se] =
      triage::bound_dynamic_mc(model, rate, curves, 0.1, 4000, rng);
  CHECK(v <= 0.1 + 1e-9);
  CHECK(v >= static_cast<double>(n_k) / rate.total_mass() - 0.01 - 2.0 * se);
}

TEST_CASE("dynamic bound sits below the empirical rate on a small instance") {
  const auto rate = RateFunction::constant(10.0, 5.0);  // Lambda = 50
  const ScoreModel model(0.2, ScoreCdf({0.0, 0.1, 0.55}, {0.0, 0.75, 1.0}),
                         ScoreCdf({0.45, 0.9, 1.0}, {0.0, 0.8, 1.0}));
  const double k = 0.1;  // n_k = 5
  const int n_k = triage::capacity_for(k, rate.total_mass());
  const auto curves = triage::solve_curves(rate, model.fs(), n_k, 2048);

  Rng rng(3);
  const auto [bound, bound_se] =
      triage::bound_dynamic_mc(model, rate, curves, k, 20000, rng);

  std::vector<triage::InspectionOutcome> outcomes;
  for (std::size_t e = 0; e < 10000; ++e) {
    Rng erng(triage::derive_seed(42, e));
    const auto ep = triage::synth_episode(rate, model, erng);
    outcomes.push_back(triage::run_dynamic(ep, curves, n_k));
  }
  const auto [emp, emp_se] = triage::detection_rate(outcomes);
  const double comb = std::sqrt(bound_se * bound_se + emp_se * emp_se);
  CHECK(bound <= emp + 2.0 * comb);
  CHECK(emp - bound < 0.1);
}

TEST_CASE("batch conditional sum handles the degenerate count cases") {
  const auto model = separated_model(0.1);
  CHECK(triage::batch_expected_caught(model, 40, 0, 5) == 0.0);
  // Disjoint supports: every fraud among the top slots wins its duel.
  CHECK(triage::batch_expected_caught(model, 40, 3, 5) ==
        doctest::Approx(3.0).epsilon(1e-6));
  CHECK(triage::batch_expected_caught(model, 40, 9, 5) ==
        doctest::Approx(5.0).epsilon(1e-6));
  // No majority competitors at all: probability one each.
  CHECK(triage::batch_expected_caught(model, 0, 2, 4) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("batch conditional sum matches brute-force duels") {
  const ScoreModel model(0.3, ScoreCdf({0.0, 0.2, 0.7}, {0.0, 0.5, 1.0}),
                         ScoreCdf({0.3, 0.8, 1.0}, {0.0, 0.7, 1.0}));
  const long long n0 = 12, n1 = 4;
  const int n_k = 5;
  const double expect = triage::batch_expected_caught(model, n0, n1, n_k);

  Rng rng(7);
  const std::size_t reps = 200000;
  double caught = 0.0;
  std::vector<double> s0(static_cast<std::size_t>(n0));
  std::vector<double> s1(static_cast<std::size_t>(n1));
  for (std::size_t r = 0; r < reps; ++r) {
    for (auto& s : s0) s = model.f0().sample(rng);
    for (auto& s : s1) s = model.f1().sample(rng);
    // Count minority samples among the top n_k of the pooled scores.
    std::vector<std::pair<double, int>> all;
    for (double s : s0) all.push_back({s, 0});
    for (double s : s1) all.push_back({s, 1});
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int i = 0; i < n_k; ++i) caught += all[static_cast<std::size_t>(i)].second;
  }
  const double mc = caught / static_cast<double>(reps);
  CHECK(expect == doctest::Approx(mc).epsilon(0.02));
}

TEST_CASE("batch bound agrees with the top-k simulation oracle") {
  // Small instance from the acceptance sweep, at reduced replication count.
  const auto model = ScoreModel(0.1, ScoreCdf({0.0, 0.15, 0.6}, {0.0, 0.7, 1.0}),
                                ScoreCdf({0.35, 0.85, 1.0}, {0.0, 0.75, 1.0}));
  const double lambda = 50.0;
  const double k = 0.1;
  Rng rng(11);
  const auto [bound, se] = triage::bound_batch_mc(model, lambda, k, 5000, rng);

  Rng orng(12);
  const int n_k = triage::capacity_for(k, lambda);
  std::poisson_distribution<long long> d0((1.0 - model.beta()) * lambda);
  std::poisson_distribution<long long> d1(model.beta() * lambda);
  const std::size_t reps = 40000;
  double acc = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    const long long n0 = d0(orng);
    const long long n1 = d1(orng);
    std::vector<std::pair<double, int>> all;
    all.reserve(static_cast<std::size_t>(n0 + n1));
    for (long long i = 0; i < n0; ++i) all.push_back({model.f0().sample(orng), 0});
    for (long long i = 0; i < n1; ++i) all.push_back({model.f1().sample(orng), 1});
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    int caught = 0;
    const auto take = std::min<std::size_t>(all.size(),
                                            static_cast<std::size_t>(n_k));
    for (std::size_t i = 0; i < take; ++i) caught += all[i].second;
    acc += static_cast<double>(caught);
  }
  const double oracle = acc / static_cast<double>(reps) /
                        (model.beta() * lambda);
  CHECK(std::abs(bound - oracle) < 0.015);
}

TEST_CASE("batch bound is monotone in capacity under common random numbers") {
  const auto model = separated_model(0.15);
  const double lambda = 80.0;
  double prev = -1.0;
  for (double k : {0.02, 0.05, 0.1, 0.15, 0.25}) {
    Rng rng(31);  // same stream per k
    const auto [v, se] = triage::bound_batch_mc(model, lambda, k, 3000, rng);
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
}

TEST_CASE("all bounds respect the end-to-end cap") {
  std::mt19937_64 gen(61);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    const ScoreModel model(0.05 + 0.3 * u01(gen), triage::test::random_cdf(gen),
                           triage::test::random_cdf(gen));
    const double lambda = 30.0 + 200.0 * u01(gen);
    const auto rate = RateFunction::constant(lambda / 4.0, 4.0);
    const int budget = std::max(1, triage::capacity_for(0.25, lambda));
    const auto curves = triage::solve_curves(rate, model.fs(), budget, 512);
    Rng rng(rep + 1);
    for (double k : {0.02, 0.1, 0.25}) {
      const double cap = triage::upper_bound(model.beta(), k);
      CHECK(triage::bound_random(lambda, k) <= cap + 1e-12);
      CHECK(triage::bound_static_optimal(model, k) <=
            triage::upper_bound(model.beta(), k) + 1e-9);
      CHECK(triage::bound_static(model, lambda, k, u01(gen)) <= cap + 1e-12);
      const auto [dv, dse] =
          triage::bound_dynamic_mc(model, rate, curves, k, 400, rng);
      CHECK(dv <= cap + 3.0 * dse + 1e-9);
      const auto [bv, bse] =
          triage::bound_batch_mc(model, lambda, k, 400, rng);
      CHECK(bv <= cap + 3.0 * bse + 1e-9);
    }
  }
}
