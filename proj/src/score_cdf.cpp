#include "triage/score_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace triage {

namespace {
constexpr double kWidenEps = 1e-6;
}

ScoreCdf::ScoreCdf(std::vector<double> knot_scores,
                   std::vector<double> knot_probs)
    : knot_scores_(std::move(knot_scores)), knot_probs_(std::move(knot_probs)) {
  if (knot_scores_.size() < 2 || knot_scores_.size() != knot_probs_.size()) {
    throw std::invalid_argument("ScoreCdf: need >= 2 matching knots");
  }
  if (!(knot_scores_.front() >= 0.0) || !(knot_scores_.back() <= 1.0)) {
    throw std::invalid_argument("ScoreCdf: knots outside [0, 1]");
  }
  for (std::size_t i = 0; i + 1 < knot_scores_.size(); ++i) {
    if (!(knot_scores_[i] < knot_scores_[i + 1])) {
      throw std::invalid_argument(
          "ScoreCdf: knot scores must be strictly increasing");
    }
    if (knot_probs_[i] > knot_probs_[i + 1]) {
      throw std::invalid_argument("ScoreCdf: probabilities must not decrease");
    }
  }
  if (knot_probs_.front() != 0.0 || knot_probs_.back() != 1.0) {
    throw std::invalid_argument("ScoreCdf: probabilities must span [0, 1]");
  }

  // tail_int_[i] = integral of (1 - F) from knot i to the last knot.
  const std::size_t n = knot_scores_.size();
  tail_int_.assign(n, 0.0);
  for (std::size_t i = n - 1; i-- > 0;) {
    const double ds = knot_scores_[i + 1] - knot_scores_[i];
    const double seg =
        ds * (1.0 - 0.5 * (knot_probs_[i] + knot_probs_[i + 1]));
    tail_int_[i] = tail_int_[i + 1] + seg;
  }
}

double ScoreCdf::cdf(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("ScoreCdf::cdf: s outside [0, 1]");
  }
  if (s <= knot_scores_.front()) return 0.0;
  if (s >= knot_scores_.back()) return 1.0;
  auto it = std::upper_bound(knot_scores_.begin(), knot_scores_.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - knot_scores_.begin()) - 1;
  const double w =
      (s - knot_scores_[i]) / (knot_scores_[i + 1] - knot_scores_[i]);
  return knot_probs_[i] + w * (knot_probs_[i + 1] - knot_probs_[i]);
}

double ScoreCdf::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("ScoreCdf::quantile: u outside [0, 1]");
  }
  // First knot with probability >= u, then interpolate inside the segment
  // just before it. Flat segments are never entered, which gives the
  // leftmost solution.
  auto it = std::lower_bound(knot_probs_.begin(), knot_probs_.end(), u);
  std::size_t i = static_cast<std::size_t>(it - knot_probs_.begin());
  if (i == 0) return knot_scores_.front();
  --i;
  // lower_bound guarantees probs[i] < u <= probs[i+1], so dp > 0 here.
  const double dp = knot_probs_[i + 1] - knot_probs_[i];
  const double w = (u - knot_probs_[i]) / dp;
  return knot_scores_[i] + w * (knot_scores_[i + 1] - knot_scores_[i]);
}

double ScoreCdf::density(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("ScoreCdf::density: s outside [0, 1]");
  }
  if (s < knot_scores_.front() || s > knot_scores_.back()) return 0.0;
  std::size_t i;
  if (s == knot_scores_.back()) {
    i = knot_scores_.size() - 2;
  } else {
    auto it = std::upper_bound(knot_scores_.begin(), knot_scores_.end(), s);
    i = static_cast<std::size_t>(it - knot_scores_.begin()) - 1;
  }
  return (knot_probs_[i + 1] - knot_probs_[i]) /
         (knot_scores_[i + 1] - knot_scores_[i]);
}

double ScoreCdf::sample(Rng& rng) const { return quantile(uniform01(rng)); }

double ScoreCdf::partial_expectation(double alpha) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error(
        "ScoreCdf::partial_expectation: alpha outside [0, 1]");
  }
  if (alpha >= knot_scores_.back()) return 0.0;
  if (alpha <= knot_scores_.front()) {
    // Full support tail plus the stretch below it, where F = 0.
    return tail_int_.front() + (knot_scores_.front() - alpha);
  }
  auto it = std::upper_bound(knot_scores_.begin(), knot_scores_.end(), alpha);
  const std::size_t i = static_cast<std::size_t>(it - knot_scores_.begin()) - 1;
  // Remaining piece of segment i from alpha to its right knot: integrate the
  // linear integrand (1 - F) exactly via its endpoint average.
  const double f_alpha =
      knot_probs_[i] + (alpha - knot_scores_[i]) /
                           (knot_scores_[i + 1] - knot_scores_[i]) *
                           (knot_probs_[i + 1] - knot_probs_[i]);
  const double ds = knot_scores_[i + 1] - alpha;
  const double seg = ds * (1.0 - 0.5 * (f_alpha + knot_probs_[i + 1]));
  return seg + tail_int_[i + 1];
}

std::uint64_t ScoreCdf::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  mix(knot_scores_.data(), knot_scores_.size() * sizeof(double));
  mix(knot_probs_.data(), knot_probs_.size() * sizeof(double));
  return h;
}

ScoreCdf fit_ecdf(std::vector<double> samples) {
  if (samples.size() < 2) {
    throw std::invalid_argument("fit_ecdf: need >= 2 samples");
  }
  for (double s : samples) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw std::invalid_argument("fit_ecdf: sample outside [0, 1]");
    }
  }
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());

  // Unique values with the cumulative count of samples <= value.
  std::vector<double> values;
  std::vector<double> heights;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    ++seen;
    if (i + 1 == samples.size() || samples[i + 1] != samples[i]) {
      values.push_back(samples[i]);
      heights.push_back((static_cast<double>(seen) - 1.0) / (n - 1.0));
    }
  }
  // heights.back() == 1 by construction. If the minimum is tied (or the
  // whole sample is one point mass) the first height is positive; anchor the
  // CDF at zero an epsilon below, nudging forward when that would leave
  // [0, 1].
  if (heights.front() > 0.0) {
    double anchor = values.front() - kWidenEps;
    if (anchor < 0.0) {
      anchor = 0.0;
      if (values.front() <= anchor) {
        values.front() = anchor + kWidenEps;  // point mass exactly at 0
        if (values.size() > 1 && values[1] <= values.front()) {
          values.front() = 0.5 * (anchor + values[1]);
        }
      }
    }
    values.insert(values.begin(), anchor);
    heights.insert(heights.begin(), 0.0);
  }
  return ScoreCdf(std::move(values), std::move(heights));
}

ScoreCdf mixture(const ScoreCdf& f0, const ScoreCdf& f1, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("mixture: beta outside [0, 1]");
  }
  std::vector<double> knots;
  knots.reserve(f0.knot_scores().size() + f1.knot_scores().size());
  std::merge(f0.knot_scores().begin(), f0.knot_scores().end(),
             f1.knot_scores().begin(), f1.knot_scores().end(),
             std::back_inserter(knots));
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::vector<double> probs(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) {
    probs[i] = (1.0 - beta) * f0.cdf(knots[i]) + beta * f1.cdf(knots[i]);
  }
  // Guard the boundary invariants against rounding in the combination.
  probs.front() = 0.0;
  probs.back() = 1.0;
  return ScoreCdf(std::move(knots), std::move(probs));
}

}  // namespace triage
