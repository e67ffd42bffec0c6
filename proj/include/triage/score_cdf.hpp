#ifndef TRIAGE_SCORE_CDF_HPP
#define TRIAGE_SCORE_CDF_HPP

#include <cstdint>
#include <vector>

#include "triage/rng.hpp"

namespace triage {

// Continuous piecewise-linear CDF of a classifier score on [0, 1].
//
// Knot scores are strictly increasing within [0, 1]; knot probabilities are
// nondecreasing, 0 at the support infimum (first knot) and 1 at the support
// supremum (last knot). Below the first knot the CDF is 0, above the last it
// is 1. Immutable after construction.
class ScoreCdf {
 public:
  ScoreCdf(std::vector<double> knot_scores, std::vector<double> knot_probs);

  static ScoreCdf uniform() { return ScoreCdf({0.0, 1.0}, {0.0, 1.0}); }

  const std::vector<double>& knot_scores() const { return knot_scores_; }
  const std::vector<double>& knot_probs() const { return knot_probs_; }
  double support_min() const { return knot_scores_.front(); }
  double support_max() const { return knot_scores_.back(); }

  // F(s). Throws std::domain_error outside [0, 1].
  double cdf(double s) const;

  // Smallest s with F(s) >= u (left endpoint on flat stretches).
  // Throws std::domain_error outside [0, 1].
  double quantile(double u) const;

  // Density f(s) = dF/ds; piecewise-constant, right-continuous at knots,
  // zero outside the support.
  double density(double s) const;

  // Inversion sampling: quantile(U).
  double sample(Rng& rng) const;

  // phi(alpha) = E[max(S - alpha, 0)] = integral over [alpha, 1] of
  // (1 - F(s)) ds, evaluated in closed form (piecewise-quadratic).
  double partial_expectation(double alpha) const;

  double mean() const { return partial_expectation(0.0); }

  std::uint64_t content_hash() const;

 private:
  std::vector<double> knot_scores_;
  std::vector<double> knot_probs_;
  // Tail integral of (1 - F) from each knot to the last one; makes
  // partial_expectation O(log n).
  std::vector<double> tail_int_;
};

// Piecewise-linear interpolation of the empirical CDF: the fitted curve
// rises from 0 at the smallest sample to 1 at the largest, passing through
// the tie-adjusted step heights at the unique sample values. A point mass
// (all samples equal, or ties at the minimum) is widened by epsilon so the
// CDF stays invertible. Requires >= 2 samples, all within [0, 1].
ScoreCdf fit_ecdf(std::vector<double> samples);

// Mixture CDF (1-beta) * F0 + beta * F1 on the union of the knots.
ScoreCdf mixture(const ScoreCdf& f0, const ScoreCdf& f1, double beta);

}  // namespace triage

#endif  // TRIAGE_SCORE_CDF_HPP
