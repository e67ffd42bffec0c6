#include "triage/arrivals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace triage {

ArrivalSequence simulate_arrivals(const RateFunction& rate, Rng& rng) {
  ArrivalSequence out;
  const double mass = rate.total_mass();
  out.times.reserve(static_cast<std::size_t>(mass + 4.0 * std::sqrt(mass)) +
                    1);
  double u = exponential1(rng);
  while (u <= mass) {
    out.times.push_back(rate.inverse_cumulative(u));
    u += exponential1(rng);
  }
  return out;
}

std::optional<double> sample_next_arrival(const RateFunction& rate,
                                          double gamma, Rng& rng) {
  if (!(gamma >= 0.0) || gamma >= rate.tau()) {
    throw std::domain_error("sample_next_arrival: gamma outside [0, tau)");
  }
  const double target = rate.cumulative(gamma) + exponential1(rng);
  if (target > rate.total_mass()) return std::nullopt;
  return rate.inverse_cumulative(target) - gamma;
}

std::pair<ArrivalSequence, ArrivalSequence> split_thinning(
    const ArrivalSequence& arrivals, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("split_thinning: p outside [0, 1]");
  }
  ArrivalSequence a, b;
  std::bernoulli_distribution pick(p);
  for (double t : arrivals.times) {
    (pick(rng) ? a : b).times.push_back(t);
  }
  return {std::move(a), std::move(b)};
}

ArrivalSequence superpose(const ArrivalSequence& a, const ArrivalSequence& b) {
  ArrivalSequence out;
  out.times.resize(a.times.size() + b.times.size());
  std::merge(a.times.begin(), a.times.end(), b.times.begin(), b.times.end(),
             out.times.begin());
  return out;
}

RateFunction estimate_rate(const std::vector<ArrivalSequence>& episodes,
                           int bins, double tau, RateInterp interp) {
  if (episodes.empty()) {
    throw std::invalid_argument("estimate_rate: no episodes");
  }
  if (bins < 1) {
    throw std::invalid_argument("estimate_rate: bins must be >= 1");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("estimate_rate: tau must be > 0");
  }

  const double width = tau / bins;
  std::vector<double> level(static_cast<std::size_t>(bins), 0.0);
  for (const auto& ep : episodes) {
    for (double t : ep.times) {
      if (!(t >= 0.0) || t > tau) {
        throw std::invalid_argument("estimate_rate: arrival outside [0, tau]");
      }
      auto b = static_cast<std::size_t>(t / width);
      if (b >= level.size()) b = level.size() - 1;  // t == tau
      level[b] += 1.0;
    }
  }
  const double norm = static_cast<double>(episodes.size()) * width;
  for (double& v : level) v /= norm;

  if (interp == RateInterp::kConstant) {
    std::vector<double> times(static_cast<std::size_t>(bins) + 1);
    std::vector<double> rates(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i) {
      times[static_cast<std::size_t>(i)] = i == bins ? tau : i * width;
      rates[static_cast<std::size_t>(i)] =
          level[static_cast<std::size_t>(std::min(i, bins - 1))];
    }
    return RateFunction(std::move(times), std::move(rates),
                        RateInterp::kConstant);
  }

  // Knots at bin midpoints, edge values duplicated at 0 and tau.
  std::vector<double> times;
  std::vector<double> rates;
  times.reserve(level.size() + 2);
  rates.reserve(level.size() + 2);
  times.push_back(0.0);
  rates.push_back(level.front());
  if (bins > 1) {
    for (int i = 0; i < bins; ++i) {
      times.push_back((i + 0.5) * width);
      rates.push_back(level[static_cast<std::size_t>(i)]);
    }
  }
  times.push_back(tau);
  rates.push_back(level.back());
  return RateFunction(std::move(times), std::move(rates), RateInterp::kLinear);
}

}  // namespace triage
