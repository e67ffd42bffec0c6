#include "triage/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "triage/policies.hpp"

namespace triage {

OrderStatPdf::OrderStatPdf(ScoreCdf base, long long n, long long i)
    : base_(std::move(base)), n_(n), i_(i) {
  if (n < 1 || i < 1 || i > n) {
    throw std::invalid_argument("OrderStatPdf: need 1 <= i <= n");
  }
  log_coeff_ = std::log(static_cast<double>(i)) +
               std::lgamma(static_cast<double>(n) + 1.0) -
               std::lgamma(static_cast<double>(i) + 1.0) -
               std::lgamma(static_cast<double>(n - i) + 1.0);
}

double OrderStatPdf::operator()(double x) const {
  const double f = base_.density(x);
  if (f <= 0.0) return 0.0;
  const double F = base_.cdf(x);
  // 0 * log(0) is treated as 0: an exponent of zero removes the factor.
  double lp = log_coeff_;
  if (i_ > 1) {
    if (F <= 0.0) return 0.0;
    lp += static_cast<double>(i_ - 1) * std::log(F);
  }
  if (n_ - i_ > 0) {
    if (F >= 1.0) return 0.0;
    lp += static_cast<double>(n_ - i_) * std::log1p(-F);
  }
  return std::exp(lp) * f;
}

double bound_static(const ScoreModel& model, double lambda_total, double k,
                    double alpha) {
  if (!(lambda_total > 0.0)) {
    throw std::invalid_argument("bound_static: Lambda(tau) must be > 0");
  }
  const double tail_s = 1.0 - model.fs().cdf(alpha);
  if (tail_s <= 0.0) return 0.0;
  const double tail_1 = 1.0 - model.f1().cdf(alpha);
  const double eff_k = k - 1.0 / lambda_total;
  if (eff_k <= 0.0) return 0.0;
  return std::clamp(tail_1 * std::min(eff_k / tail_s, 1.0), 0.0, 1.0);
}

double bound_static_asymptotic(const ScoreModel& model, double k,
                               double alpha) {
  const double tail_s = 1.0 - model.fs().cdf(alpha);
  if (tail_s <= 0.0) return 0.0;
  const double tail_1 = 1.0 - model.f1().cdf(alpha);
  return std::clamp(tail_1 * std::min(k / tail_s, 1.0), 0.0, 1.0);
}

double optimal_static_threshold(const ScoreModel& model, double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw std::invalid_argument("optimal_static_threshold: k outside [0, 1]");
  }
  return model.fs().quantile(1.0 - k);
}

double bound_static_optimal(const ScoreModel& model, double k) {
  return 1.0 - model.f1().cdf(optimal_static_threshold(model, k));
}

double bound_random(double lambda_total, double k) {
  if (!(lambda_total > 0.0)) {
    throw std::invalid_argument("bound_random: Lambda(tau) must be > 0");
  }
  return std::clamp(k - 1.0 / lambda_total, 0.0, 1.0);
}

double upper_bound(double beta, double k) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("upper_bound: beta outside (0, 1)");
  }
  return std::min(k / beta, 1.0);
}

namespace {

std::pair<double, double> mean_se(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

std::pair<double, double> bound_dynamic_mc(const ScoreModel& model,
                                           const RateFunction& rate,
                                           const CriticalCurveSet& curves,
                                           double k, std::uint64_t reps,
                                           Rng& rng) {
  if (reps < 1) throw std::invalid_argument("bound_dynamic_mc: reps < 1");
  const double lambda_total = rate.total_mass();
  const int n_k = capacity_for(k, lambda_total);
  if (n_k == 0) return {0.0, 0.0};
  if (n_k > curves.budget()) {
    throw std::invalid_argument("bound_dynamic_mc: curves budget below n_k");
  }
  if (std::abs(curves.horizon() - rate.tau()) >
      1e-9 * std::max(1.0, rate.tau())) {
    throw std::invalid_argument(
        "bound_dynamic_mc: curves horizon does not match rate horizon");
  }

  const auto& grid = curves.grid_times();
  const double tau = rate.tau();

  // Hazard of the next inspection while j inspections remain.
  auto hazard = [&](int j, double t) {
    const double a = curves.threshold_at(j, t);
    return (1.0 - model.fs().cdf(a)) * rate.rate(t);
  };

  std::vector<double> values;
  values.reserve(reps);
  for (std::uint64_t rep = 0; rep < reps; ++rep) {
    double t_now = 0.0;
    double sum_q = 0.0;
    // Walk the shared grid once per replication; inspection times are
    // increasing so segments are consumed in order.
    std::size_t g = 1;
    for (int i = 1; i <= n_k; ++i) {
      const int j = n_k - i + 1;  // remaining budget index rho(i)
      double target = exponential1(rng);
      double m_left = hazard(j, t_now);
      double t_left = t_now;
      bool found = false;
      while (g < grid.size()) {
        const double t_right = grid[g];
        if (t_right <= t_left) {
          ++g;
          continue;
        }
        const double m_right = hazard(j, t_right);
        const double seg = 0.5 * (m_left + m_right) * (t_right - t_left);
        if (seg >= target && seg > 0.0) {
          const double w = target / seg;
          t_now = t_left + w * (t_right - t_left);
          found = true;
          break;
        }
        target -= seg;
        t_left = t_right;
        m_left = m_right;
        ++g;
      }
      if (!found) break;  // next inspection falls beyond the horizon
      const double a = curves.threshold_at(j, std::min(t_now, tau));
      sum_q += model.q_ratio(a).value;
    }
    values.push_back(sum_q / lambda_total);
  }
  return mean_se(values);
}

namespace {

// Trapezoid weights aside, evaluates the order-statistic machinery for one
// (n0, n1) configuration on a shared support grid.
class BatchGrid {
 public:
  explicit BatchGrid(const ScoreModel& model, std::size_t points = 2048) {
    const double lo =
        std::min(model.f0().support_min(), model.f1().support_min());
    const double hi =
        std::max(model.f0().support_max(), model.f1().support_max());
    x_.resize(points);
    f0_.resize(points);
    F0_.resize(points);
    f1_.resize(points);
    F1_.resize(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t g = 0; g < points; ++g) {
      const double x = g + 1 == points ? hi : lo + step * static_cast<double>(g);
      x_[g] = x;
      f0_[g] = model.f0().density(x);
      F0_[g] = model.f0().cdf(x);
      f1_[g] = model.f1().density(x);
      F1_[g] = model.f1().cdf(x);
    }
  }

  // P(S1_(i1 of n1) > S0_(i0 of n0)) via a single integral of the rank-i1
  // density against the rank-i0 CDF, the latter obtained by cumulative
  // trapezoid of the rank-i0 density on the grid.
  double prob_minority_wins(long long n0, long long i0, long long n1,
                            long long i1) const {
    const double lc0 = log_comb(n0, i0);
    const double lc1 = log_comb(n1, i1);
    const std::size_t m = x_.size();
    std::vector<double> os0(m), os1(m);
    for (std::size_t g = 0; g < m; ++g) {
      os0[g] = order_stat_density(lc0, n0, i0, F0_[g], f0_[g]);
      os1[g] = order_stat_density(lc1, n1, i1, F1_[g], f1_[g]);
    }
    double cum0 = 0.0;
    double acc = 0.0;
    for (std::size_t g = 1; g < m; ++g) {
      const double dx = x_[g] - x_[g - 1];
      const double cum_next = cum0 + 0.5 * (os0[g - 1] + os0[g]) * dx;
      // Trapezoid of os1 * F0_os over the cell, with F0_os linear on it.
      acc += 0.5 * (os1[g - 1] * cum0 + os1[g] * cum_next) * dx;
      cum0 = cum_next;
    }
    // Renormalize by the numeric mass of os0, which absorbs trapezoid error
    // in the rank-i0 CDF where the rank-i1 density has its mass.
    if (cum0 > 0.5) acc /= cum0;
    return std::clamp(acc, 0.0, 1.0);
  }

 private:
  static double log_comb(long long n, long long i) {
    return std::log(static_cast<double>(i)) +
           std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(i) + 1.0) -
           std::lgamma(static_cast<double>(n - i) + 1.0);
  }

  static double order_stat_density(double log_coeff, long long n, long long i,
                                   double F, double f) {
    if (f <= 0.0) return 0.0;
    double lp = log_coeff;
    if (i > 1) {
      if (F <= 0.0) return 0.0;
      lp += static_cast<double>(i - 1) * std::log(F);
    }
    if (n - i > 0) {
      if (F >= 1.0) return 0.0;
      lp += static_cast<double>(n - i) * std::log1p(-F);
    }
    return std::exp(lp) * f;
  }

  std::vector<double> x_, f0_, F0_, f1_, F1_;
};

}  // namespace

double batch_expected_caught(const ScoreModel& model, long long n0,
                             long long n1, int n_k) {
  if (n1 < 0 || n0 < 0) {
    throw std::invalid_argument("batch_expected_caught: negative counts");
  }
  const long long m = std::min<long long>(n_k, n1);
  if (m <= 0) return 0.0;
  BatchGrid grid(model);
  double sum = 0.0;
  for (long long j = 1; j <= m; ++j) {
    const long long rho0 = n0 - n_k + j;
    const long long rho1 = n1 - j + 1;
    if (rho1 < 1) {
      throw std::logic_error("batch_expected_caught: rho1 below 1");
    }
    if (rho0 < 1) {
      sum += 1.0;  // fewer majority competitors than open slots
      continue;
    }
    sum += grid.prob_minority_wins(n0, rho0, n1, rho1);
  }
  return sum;
}

std::pair<double, double> bound_batch_mc(const ScoreModel& model,
                                         double lambda_total, double k,
                                         std::uint64_t reps, Rng& rng) {
  if (reps < 1) throw std::invalid_argument("bound_batch_mc: reps < 1");
  if (!(lambda_total > 0.0)) {
    throw std::invalid_argument("bound_batch_mc: Lambda(tau) must be > 0");
  }
  const int n_k = capacity_for(k, lambda_total);
  const double beta = model.beta();
  std::poisson_distribution<long long> draw0((1.0 - beta) * lambda_total);
  std::poisson_distribution<long long> draw1(beta * lambda_total);

  // The conditional sum depends only on the class counts; Poisson draws
  // repeat heavily, so memoize.
  std::map<std::pair<long long, long long>, double> cache;
  std::vector<double> values;
  values.reserve(reps);
  for (std::uint64_t rep = 0; rep < reps; ++rep) {
    const long long n0 = draw0(rng);
    const long long n1 = draw1(rng);
    auto [it, inserted] = cache.try_emplace({n0, n1}, 0.0);
    if (inserted) {
      it->second = batch_expected_caught(model, n0, n1, n_k);
    }
    values.push_back(it->second / (beta * lambda_total));
  }
  return mean_se(values);
}

}  // namespace triage
