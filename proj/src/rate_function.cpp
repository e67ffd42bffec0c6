#include "triage/rate_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "json.hpp"

namespace triage {

RateFunction::RateFunction(std::vector<double> knot_times,
                           std::vector<double> knot_rates, RateInterp interp)
    : knot_times_(std::move(knot_times)),
      knot_rates_(std::move(knot_rates)),
      interp_(interp) {
  if (knot_times_.size() < 2 || knot_times_.size() != knot_rates_.size()) {
    throw std::invalid_argument("RateFunction: need >= 2 matching knots");
  }
  if (knot_times_.front() != 0.0) {
    throw std::invalid_argument("RateFunction: first knot must be at t = 0");
  }
  for (std::size_t i = 0; i + 1 < knot_times_.size(); ++i) {
    if (!(knot_times_[i] < knot_times_[i + 1])) {
      throw std::invalid_argument(
          "RateFunction: knot times must be strictly increasing");
    }
  }
  for (double r : knot_rates_) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("RateFunction: rates must be >= 0");
    }
  }

  cum_.resize(knot_times_.size());
  cum_[0] = 0.0;
  for (std::size_t i = 0; i + 1 < knot_times_.size(); ++i) {
    const double dt = knot_times_[i + 1] - knot_times_[i];
    const double seg = interp_ == RateInterp::kLinear
                           ? 0.5 * (knot_rates_[i] + knot_rates_[i + 1]) * dt
                           : knot_rates_[i] * dt;
    cum_[i + 1] = cum_[i] + seg;
  }
}

RateFunction RateFunction::constant(double rate, double tau) {
  return RateFunction({0.0, tau}, {rate, rate});
}

std::size_t RateFunction::segment_index(double t) const {
  // Index i with knot_times_[i] <= t < knot_times_[i+1]; last segment for
  // t == tau.
  auto it = std::upper_bound(knot_times_.begin(), knot_times_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - knot_times_.begin());
  if (i == 0) return 0;
  if (i >= knot_times_.size()) return knot_times_.size() - 2;
  return i - 1;
}

double RateFunction::rate(double t) const {
  if (!(t >= 0.0) || t > tau()) {
    throw std::domain_error("RateFunction::rate: t outside [0, tau]");
  }
  const std::size_t i = segment_index(t);
  if (interp_ == RateInterp::kConstant) {
    return t == tau() ? knot_rates_.back() : knot_rates_[i];
  }
  const double w =
      (t - knot_times_[i]) / (knot_times_[i + 1] - knot_times_[i]);
  return knot_rates_[i] + w * (knot_rates_[i + 1] - knot_rates_[i]);
}

double RateFunction::cumulative(double t) const {
  if (!(t >= 0.0) || t > tau()) {
    throw std::domain_error("RateFunction::cumulative: t outside [0, tau]");
  }
  const std::size_t i = segment_index(t);
  const double dt = t - knot_times_[i];
  if (interp_ == RateInterp::kConstant) {
    return cum_[i] + knot_rates_[i] * dt;
  }
  const double len = knot_times_[i + 1] - knot_times_[i];
  const double slope = (knot_rates_[i + 1] - knot_rates_[i]) / len;
  return cum_[i] + knot_rates_[i] * dt + 0.5 * slope * dt * dt;
}

double RateFunction::inverse_cumulative(double u) const {
  if (!(u >= 0.0)) {
    throw std::domain_error("RateFunction::inverse_cumulative: u < 0");
  }
  if (u > total_mass()) {
    throw std::out_of_range(
        "RateFunction::inverse_cumulative: u exceeds Lambda(tau)");
  }
  // First knot whose cumulative reaches u; solving inside the preceding
  // segment lands on the left endpoint of any flat run, which is the
  // tie-break we want.
  auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
  std::size_t i = static_cast<std::size_t>(it - cum_.begin());
  if (i == 0) return knot_times_.front();
  --i;

  const double rem = u - cum_[i];
  const double len = knot_times_[i + 1] - knot_times_[i];
  const double r0 = knot_rates_[i];

  if (interp_ == RateInterp::kConstant) {
    return knot_times_[i] + (rem == 0.0 ? 0.0 : rem / r0);
  }

  const double r1 = knot_rates_[i + 1];
  const double a = 0.5 * (r1 - r0) / len;
  // Solve a*dt^2 + r0*dt = rem for the root in [0, len]. The rationalized
  // form 2*rem/(r0 + sqrt(disc)) selects the correct branch for both rising
  // and falling segments and avoids cancellation when r0 dominates.
  double dt;
  if (rem == 0.0) {
    dt = 0.0;
  } else if (a == 0.0) {
    dt = rem / r0;
  } else {
    const double disc = std::max(r0 * r0 + 4.0 * a * rem, 0.0);
    dt = 2.0 * rem / (r0 + std::sqrt(disc));
  }
  return knot_times_[i] + std::min(dt, len);
}

std::uint64_t RateFunction::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::uint8_t tag = interp_ == RateInterp::kLinear ? 0 : 1;
  mix(&tag, 1);
  mix(knot_times_.data(), knot_times_.size() * sizeof(double));
  mix(knot_rates_.data(), knot_rates_.size() * sizeof(double));
  return h;
}

std::string RateFunction::to_json() const {
  nlohmann::json j;
  j["tau"] = tau();
  j["knot_times"] = knot_times_;
  j["knot_rates"] = knot_rates_;
  j["interp"] = interp_ == RateInterp::kLinear ? "linear" : "constant";
  return j.dump(2);
}

RateFunction RateFunction::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  RateInterp interp = RateInterp::kLinear;
  if (j.contains("interp") && j["interp"] == "constant") {
    interp = RateInterp::kConstant;
  }
  RateFunction rf(j.at("knot_times").get<std::vector<double>>(),
                  j.at("knot_rates").get<std::vector<double>>(), interp);
  if (j.contains("tau")) {
    const double tau = j["tau"].get<double>();
    if (std::abs(tau - rf.tau()) > 1e-9 * std::max(1.0, tau)) {
      throw std::invalid_argument(
          "RateFunction::from_json: tau does not match last knot");
    }
  }
  return rf;
}

}  // namespace triage
