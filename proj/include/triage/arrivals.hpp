#ifndef TRIAGE_ARRIVALS_HPP
#define TRIAGE_ARRIVALS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "triage/rate_function.hpp"
#include "triage/rng.hpp"

namespace triage {

// Arrival times of one realization of the process, sorted, all in [0, tau].
struct ArrivalSequence {
  std::vector<double> times;

  std::size_t count() const { return times.size(); }
};

// Draws one realization on [0, tau] by inversion: cumulative unit-exponential
// increments mapped through Lambda^-1. The count N(tau) is Poisson of mean
// Lambda(tau) and increments over disjoint intervals are independent.
ArrivalSequence simulate_arrivals(const RateFunction& rate, Rng& rng);

// Wait time from gamma to the next event, conditioned on an event (or the
// observation start) at gamma. Density lambda(gamma+t) * exp(-int_0^t
// lambda(gamma+u) du); sampled as Lambda^-1(Lambda(gamma) + E) - gamma.
// Returns nullopt when the next event falls beyond the horizon.
// Throws std::domain_error unless 0 <= gamma < tau.
std::optional<double> sample_next_arrival(const RateFunction& rate,
                                          double gamma, Rng& rng);

// Independent Bernoulli(p) split. The first stream follows intensity
// p*lambda(t), the second (1-p)*lambda(t), and they are independent.
std::pair<ArrivalSequence, ArrivalSequence> split_thinning(
    const ArrivalSequence& arrivals, double p, Rng& rng);

// Merge of independent realizations; superposing the two streams from
// split_thinning reproduces the input exactly.
ArrivalSequence superpose(const ArrivalSequence& a, const ArrivalSequence& b);

// Histogram rate estimator over i.i.d. episodes on [0, tau]: count in bin /
// (episode count * bin width). With kLinear the bin values become knots at
// bin midpoints with the edge values duplicated at 0 and tau, which perturbs
// the total mass by at most one bin's curvature; kConstant preserves the
// mass exactly.
RateFunction estimate_rate(const std::vector<ArrivalSequence>& episodes,
                           int bins, double tau,
                           RateInterp interp = RateInterp::kLinear);

}  // namespace triage

#endif  // TRIAGE_ARRIVALS_HPP
