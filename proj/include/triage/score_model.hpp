#ifndef TRIAGE_SCORE_MODEL_HPP
#define TRIAGE_SCORE_MODEL_HPP

#include <cstdint>
#include <string>

#include "triage/score_cdf.hpp"

namespace triage {

// Probability that an above-threshold arrival is from the minority class,
// with a flag for the exhausted-tail convention.
struct TailRatio {
  double value = 0.0;
  bool exhausted = false;  // F_S(alpha) == 1, no mass above the threshold
};

// Class prior plus the conditional score CDFs and the derived mixture:
// F_S = (1 - beta) F0 + beta F1.
class ScoreModel {
 public:
  ScoreModel(double beta, ScoreCdf f0, ScoreCdf f1);

  double beta() const { return beta_; }
  const ScoreCdf& f0() const { return f0_; }
  const ScoreCdf& f1() const { return f1_; }
  const ScoreCdf& fs() const { return fs_; }

  // (1 - F1(alpha)) / (1 - F_S(alpha)). When the mixture tail is exhausted
  // the limit convention is 0: no arrival exceeds alpha.
  TailRatio q_ratio(double alpha) const;

  // beta * q_ratio: the probability that an arrival exceeding alpha is from
  // the minority class. Always in [0, 1].
  double q(double alpha) const { return beta_ * q_ratio(alpha).value; }

  std::uint64_t content_hash() const;

  std::string to_json() const;
  static ScoreModel from_json(const std::string& text);

 private:
  double beta_;
  ScoreCdf f0_;
  ScoreCdf f1_;
  ScoreCdf fs_;
};

}  // namespace triage

#endif  // TRIAGE_SCORE_MODEL_HPP
