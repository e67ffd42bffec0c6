#include "triage/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "triage/arrivals.hpp"

namespace triage {

int Episode::fraud_count() const {
  int n = 0;
  for (const auto& a : arrivals) n += a.label;
  return n;
}

int capacity_for(double k, double lambda_total) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw std::invalid_argument("capacity_for: k outside [0, 1]");
  }
  if (!(lambda_total > 0.0)) {
    throw std::invalid_argument("capacity_for: Lambda(tau) must be > 0");
  }
  return static_cast<int>(std::floor(k * lambda_total + 1e-9));
}

namespace {

InspectionOutcome finalize(const Episode& ep, std::vector<std::size_t> selected,
                           int n_k, std::string policy) {
  InspectionOutcome out;
  out.selected = std::move(selected);
  out.capacity = n_k;
  out.policy = std::move(policy);
  out.frauds_total = ep.fraud_count();
  for (std::size_t i : out.selected) {
    out.frauds_caught += ep.arrivals[i].label;
  }
  return out;
}

}  // namespace

InspectionOutcome run_static(const Episode& ep, double alpha, int n_k) {
  std::vector<std::size_t> sel;
  for (std::size_t i = 0; i < ep.arrivals.size(); ++i) {
    if (static_cast<int>(sel.size()) >= n_k) break;
    if (ep.arrivals[i].score >= alpha) sel.push_back(i);
  }
  return finalize(ep, std::move(sel), n_k, "static");
}

InspectionOutcome run_dynamic(const Episode& ep,
                              const CriticalCurveSet& curves, int n_k) {
  if (n_k > curves.budget()) {
    throw std::invalid_argument(
        "run_dynamic: curves solved for a smaller budget than n_k");
  }
  std::vector<std::size_t> sel;
  int remaining = n_k;
  for (std::size_t i = 0; i < ep.arrivals.size() && remaining > 0; ++i) {
    const auto& a = ep.arrivals[i];
    if (a.score > curves.threshold_at(remaining, std::min(a.t, ep.tau))) {
      sel.push_back(i);
      --remaining;
    }
  }
  return finalize(ep, std::move(sel), n_k, "dynamic");
}

InspectionOutcome run_random(const Episode& ep, const RateFunction& rate,
                             double k, int n_k, Rng& rng) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw std::invalid_argument("run_random: k outside [0, 1]");
  }
  std::vector<std::size_t> sel;
  const double total = rate.total_mass();
  int remaining = n_k;
  for (std::size_t i = 0; i < ep.arrivals.size() && remaining > 0; ++i) {
    const double t = std::min(ep.arrivals[i].t, rate.tau());
    const double expected_rest = total - rate.cumulative(t);
    double p = 1.0;
    if (expected_rest > static_cast<double>(remaining)) {
      p = std::max(k, static_cast<double>(remaining) / expected_rest);
    }
    if (uniform01(rng) < p) {
      sel.push_back(i);
      --remaining;
    }
  }
  return finalize(ep, std::move(sel), n_k, "random");
}

InspectionOutcome run_batch(const Episode& ep, int n_k) {
  std::vector<std::size_t> order(ep.arrivals.size());
  std::iota(order.begin(), order.end(), 0);
  // Arrivals are time-sorted, so index order doubles as the time/input
  // tie-break.
  std::stable_sort(order.begin(), order.end(),
                   [&ep](std::size_t a, std::size_t b) {
                     return ep.arrivals[a].score > ep.arrivals[b].score;
                   });
  const auto take = std::min<std::size_t>(order.size(),
                                          static_cast<std::size_t>(
                                              std::max(n_k, 0)));
  std::vector<std::size_t> sel(order.begin(), order.begin() + take);
  std::sort(sel.begin(), sel.end());
  return finalize(ep, std::move(sel), n_k, "batch");
}

Episode synth_episode(const RateFunction& rate, const ScoreModel& model,
                      Rng& rng) {
  Episode ep;
  ep.tau = rate.tau();
  const ArrivalSequence seq = simulate_arrivals(rate, rng);
  ep.arrivals.reserve(seq.times.size());
  std::bernoulli_distribution is_fraud(model.beta());
  for (double t : seq.times) {
    Arrival a;
    a.t = t;
    a.label = is_fraud(rng) ? 1 : 0;
    a.score = (a.label == 1 ? model.f1() : model.f0()).sample(rng);
    ep.arrivals.push_back(a);
  }
  return ep;
}

std::pair<double, double> detection_rate(
    const std::vector<InspectionOutcome>& outcomes) {
  if (outcomes.empty()) {
    throw std::invalid_argument("detection_rate: no outcomes");
  }
  std::vector<double> ratios;
  ratios.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    if (o.frauds_total >= 1) {
      ratios.push_back(static_cast<double>(o.frauds_caught) /
                       static_cast<double>(o.frauds_total));
    }
  }
  if (ratios.empty()) {
    throw std::runtime_error(
        "detection_rate: undefined, every episode is fraud-free");
  }
  const double n = static_cast<double>(ratios.size());
  const double mean =
      std::accumulate(ratios.begin(), ratios.end(), 0.0) / n;
  if (ratios.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double r : ratios) ss += (r - mean) * (r - mean);
  const double se = std::sqrt(ss / (n - 1.0) / n);
  return {mean, se};
}

}  // namespace triage
