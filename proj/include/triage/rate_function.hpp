#ifndef TRIAGE_RATE_FUNCTION_HPP
#define TRIAGE_RATE_FUNCTION_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace triage {

// How knot values are read between knots.
enum class RateInterp {
  kLinear,    // intensity linear between knots; cumulative piecewise-quadratic
  kConstant,  // intensity constant on [t_i, t_{i+1}); cumulative piecewise-linear
};

// Intensity function lambda(t) of a point process on a finite horizon
// [0, tau], with its exact cumulative Lambda(t) and inverse Lambda^-1(u).
//
// Knot times are strictly increasing, the first knot sits at 0 and the last
// at tau, and all rates are nonnegative. Immutable after construction and
// safe for concurrent reads.
class RateFunction {
 public:
  RateFunction(std::vector<double> knot_times, std::vector<double> knot_rates,
               RateInterp interp = RateInterp::kLinear);

  // Convenience: constant intensity on [0, tau].
  static RateFunction constant(double rate, double tau);

  double tau() const { return knot_times_.back(); }
  double total_mass() const { return cum_.back(); }  // Lambda(tau)

  const std::vector<double>& knot_times() const { return knot_times_; }
  const std::vector<double>& knot_rates() const { return knot_rates_; }
  RateInterp interp() const { return interp_; }

  // lambda(t). Throws std::domain_error outside [0, tau].
  double rate(double t) const;

  // Lambda(t) = integral of lambda over [0, t], in closed form.
  // Throws std::domain_error outside [0, tau].
  double cumulative(double t) const;

  // Smallest t with Lambda(t) >= u. On intervals of zero intensity this is
  // the left endpoint of the flat segment. Throws std::out_of_range for
  // u > Lambda(tau) and std::domain_error for u < 0.
  double inverse_cumulative(double u) const;

  // FNV-1a over the exact byte representation; used for provenance keys.
  std::uint64_t content_hash() const;

  std::string to_json() const;
  static RateFunction from_json(const std::string& text);

 private:
  std::size_t segment_index(double t) const;

  std::vector<double> knot_times_;
  std::vector<double> knot_rates_;
  std::vector<double> cum_;  // Lambda at each knot
  RateInterp interp_;
};

}  // namespace triage

#endif  // TRIAGE_RATE_FUNCTION_HPP
