#ifndef TRIAGE_BOUNDS_HPP
#define TRIAGE_BOUNDS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "triage/critical_curves.hpp"
#include "triage/rate_function.hpp"
#include "triage/rng.hpp"
#include "triage/score_model.hpp"

namespace triage {

// Density of the i-th order statistic of an i.i.d. sample of size n from a
// piecewise-linear score CDF:
//
//   f_(i)(x) = i * C(n, i) * F(x)^(i-1) * (1-F(x))^(n-i) * f(x)
//
// The binomial coefficient and powers are combined in log space so the
// density stays evaluable for n in the thousands.
class OrderStatPdf {
 public:
  OrderStatPdf(ScoreCdf base, long long n, long long i);

  double operator()(double x) const;

  long long sample_size() const { return n_; }
  long long rank() const { return i_; }
  const ScoreCdf& base() const { return base_; }

 private:
  ScoreCdf base_;
  long long n_;
  long long i_;
  double log_coeff_;
};

// Detection-rate bound of one method over a capacity grid. mc_se is zero
// for closed-form methods.
struct BoundCurve {
  std::string method;  // static | static_optimal | dynamic | random | batch | upper
  std::vector<double> k_grid;
  std::vector<double> values;
  std::vector<double> mc_se;
  double beta = 0.0;
  double lambda_total = 0.0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
};

// Fixed-threshold lower bound:
//   (1 - F1(alpha)) * min{(k - 1/Lambda) / (1 - F_S(alpha)), 1}
// clamped into [0, 1]; k below 1/Lambda means zero capacity, hence 0. An
// exhausted mixture tail (F_S(alpha) = 1) also gives 0.
double bound_static(const ScoreModel& model, double lambda_total, double k,
                    double alpha);

// Same with the 1/Lambda correction dropped (the large-Lambda form used to
// derive the optimal threshold).
double bound_static_asymptotic(const ScoreModel& model, double k,
                               double alpha);

// alpha* = F_S^-1(1 - k): the threshold leaving an expected fraction k of
// arrivals above it. k = 0 returns the support supremum.
double optimal_static_threshold(const ScoreModel& model, double k);

// Value of the static bound at alpha*: 1 - F1(alpha*).
double bound_static_optimal(const ScoreModel& model, double k);

// Random-sampling lower bound max(k - 1/Lambda, 0).
double bound_random(double lambda_total, double k);

// End-to-end upper bound min(k / beta, 1) on any selection method and any
// classifier.
double upper_bound(double beta, double k);

// Monte Carlo evaluation of the threshold-curve lower bound
//   (1/Lambda) * sum_j E[ q(alpha_{n_k-j+1}(T_1 + ... + T_j)) ]
// where the waiting time T_i has hazard (1 - F_S(alpha_{n_k-i+1}(t))) *
// lambda(t), sampled by cumulative-hazard inversion on the curves' grid.
// Inspections past the horizon contribute zero. Returns (estimate, se).
std::pair<double, double> bound_dynamic_mc(const ScoreModel& model,
                                           const RateFunction& rate,
                                           const CriticalCurveSet& curves,
                                           double k, std::uint64_t reps,
                                           Rng& rng);

// Conditional batch sum  sum_{j=1}^{min(n_k, n1)} P(S1_(rho1) > S0_(rho0))
// for fixed class counts, with rho0(j) = n0 - n_k + j, rho1(j) = n1 - j + 1.
// Ranks rho0 < 1 (fewer competitors than slots) contribute probability 1.
// This is the expected number of minority samples among the top n_k scores.
double batch_expected_caught(const ScoreModel& model, long long n0,
                             long long n1, int n_k);

// Monte Carlo evaluation of the batch-processing lower bound: averages
// batch_expected_caught over N0 ~ Poisson((1-beta) Lambda) and
// N1 ~ Poisson(beta Lambda), normalized by beta * Lambda.
// Returns (estimate, se).
std::pair<double, double> bound_batch_mc(const ScoreModel& model,
                                         double lambda_total, double k,
                                         std::uint64_t reps, Rng& rng);

}  // namespace triage

#endif  // TRIAGE_BOUNDS_HPP
