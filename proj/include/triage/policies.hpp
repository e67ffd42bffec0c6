#ifndef TRIAGE_POLICIES_HPP
#define TRIAGE_POLICIES_HPP

#include <string>
#include <utility>
#include <vector>

#include "triage/critical_curves.hpp"
#include "triage/rate_function.hpp"
#include "triage/rng.hpp"
#include "triage/score_model.hpp"

namespace triage {

struct Arrival {
  double t = 0.0;
  double score = 0.0;
  int label = 0;  // 1 = minority class (fraud)
};

// One horizon [0, tau] of arrivals, time-sorted.
struct Episode {
  std::string id;
  std::vector<Arrival> arrivals;
  double tau = 0.0;

  int fraud_count() const;
};

struct InspectionOutcome {
  std::vector<std::size_t> selected;  // indices into Episode::arrivals
  int frauds_caught = 0;
  int frauds_total = 0;
  int capacity = 0;
  std::string policy;
};

// Detection-rate estimates over a capacity grid.
struct TradeoffCurve {
  std::string policy;
  std::vector<double> k_grid;
  std::vector<double> psi_mean;
  std::vector<double> psi_se;
  std::vector<std::size_t> episodes_used;
};

// n_k = floor(k * Lambda(tau)). The epsilon absorbs decimal-to-binary noise
// so that mathematically integral products floor exactly.
int capacity_for(double k, double lambda_total);

// Inspect arrivals in time order while budget remains, taking any score
// >= alpha. Skipped arrivals are never revisited.
InspectionOutcome run_static(const Episode& ep, double alpha, int n_k);

// Threshold-curve policy: with j inspections left at time t, select iff
// score > alpha_j(t). Curves must be solved for a budget >= n_k.
InspectionOutcome run_dynamic(const Episode& ep, const CriticalCurveSet& curves,
                              int n_k);

// Label-blind streaming sampler. Each arrival is selected with probability
// max(k, remaining budget / expected remaining arrivals), capped at 1 and at
// the budget. The schedule-aware boost keeps the expected number of
// selections at n_k, which plain Bernoulli(k) sampling undershoots by
// O(sqrt(n_k)) through the cap. `rate` is the intensity the capacity was
// computed from.
InspectionOutcome run_random(const Episode& ep, const RateFunction& rate,
                             double k, int n_k, Rng& rng);

// Offline reference policy: the n_k highest scores at time tau, ties broken
// by earlier arrival, then input order.
InspectionOutcome run_batch(const Episode& ep, int n_k);

// Simulated episode: NHPP arrivals, i.i.d. Bernoulli(beta) labels, scores
// drawn from F1 for label 1 and F0 otherwise.
Episode synth_episode(const RateFunction& rate, const ScoreModel& model,
                      Rng& rng);

// Mean and standard error of the per-episode ratio frauds_caught /
// frauds_total over episodes that contain at least one fraud; the ratio is
// undefined on fraud-free episodes and they are excluded. Throws
// std::runtime_error if every episode is fraud-free.
std::pair<double, double> detection_rate(
    const std::vector<InspectionOutcome>& outcomes);

}  // namespace triage

#endif  // TRIAGE_POLICIES_HPP
