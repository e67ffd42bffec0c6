#ifndef TRIAGE_CRITICAL_CURVES_HPP
#define TRIAGE_CRITICAL_CURVES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "triage/rate_function.hpp"
#include "triage/score_cdf.hpp"

namespace triage {

// Time-varying score thresholds alpha_j(t) for j = 1..n remaining
// inspections, on a uniform grid over [0, T]. Curve j is the threshold in
// force while j inspections remain; alpha_1(t) >= ... >= alpha_n(t), every
// curve is nonincreasing in t, and alpha_j(T) = 0.
class CriticalCurveSet {
 public:
  CriticalCurveSet(std::vector<double> grid_times,
                   std::vector<std::vector<double>> alpha,
                   std::uint64_t rate_hash, std::uint64_t score_hash);

  int budget() const { return static_cast<int>(alpha_.size()); }
  std::size_t grid_size() const { return grid_times_.size(); }
  double horizon() const { return grid_times_.back(); }
  const std::vector<double>& grid_times() const { return grid_times_; }
  // Curve for j remaining inspections (1-based j).
  const std::vector<double>& curve(int j) const;

  std::uint64_t rate_hash() const { return rate_hash_; }
  std::uint64_t score_hash() const { return score_hash_; }

  // alpha_j(t) by linear interpolation on the grid. Throws
  // std::out_of_range for j outside [1, n], std::domain_error for t
  // outside [0, T].
  double threshold_at(int j, double t) const;

  // A set solved for a larger budget restricted to its first n curves;
  // the triangular structure makes this exact.
  CriticalCurveSet sliced(int n) const;

  // Matrix CSV `t,alpha_1,...,alpha_n` plus a JSON sidecar
  // `<path>.meta.json` carrying the provenance hashes.
  void save(const std::string& path) const;
  static CriticalCurveSet load(const std::string& path);

 private:
  std::vector<double> grid_times_;
  std::vector<std::vector<double>> alpha_;  // alpha_[j-1][g]
  std::uint64_t rate_hash_ = 0;
  std::uint64_t score_hash_ = 0;
};

// Integrates the threshold ODE system backward from the terminal condition
// alpha_j(T) = 0 with classical fixed-step RK4 on a uniform grid of
// `grid_size` points:
//
//   d alpha_j / dt = -lambda(t) * (phi(alpha_j(t)) - phi(alpha_{j-1}(t)))
//
// with phi the partial expectation of the mixture score CDF and
// phi(alpha_0) = 0. The system is lower-triangular, so curves are solved in
// order of j with the predecessor interpolated at RK4 stage points; after
// each step alpha_j is clamped into [0, min(alpha_{j-1}, 1)].
CriticalCurveSet solve_curves(const RateFunction& rate, const ScoreCdf& fs,
                              int budget, std::size_t grid_size = 4096);

}  // namespace triage

#endif  // TRIAGE_CRITICAL_CURVES_HPP
