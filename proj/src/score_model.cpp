#include "triage/score_model.hpp"

#include <cstring>
#include <stdexcept>

#include "json.hpp"

namespace triage {

ScoreModel::ScoreModel(double beta, ScoreCdf f0, ScoreCdf f1)
    : beta_(beta),
      f0_(std::move(f0)),
      f1_(std::move(f1)),
      fs_(mixture(f0_, f1_, beta)) {
  if (!(beta > 0.0 && beta < 0.5)) {
    throw std::invalid_argument("ScoreModel: beta must lie in (0, 0.5)");
  }
}

TailRatio ScoreModel::q_ratio(double alpha) const {
  const double tail_s = 1.0 - fs_.cdf(alpha);
  if (tail_s <= 0.0) return {0.0, true};
  return {(1.0 - f1_.cdf(alpha)) / tail_s, false};
}

std::uint64_t ScoreModel::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_u64 = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  };
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(beta_));
  std::memcpy(&bits, &beta_, sizeof(bits));
  mix_u64(bits);
  mix_u64(f0_.content_hash());
  mix_u64(f1_.content_hash());
  return h;
}

std::string ScoreModel::to_json() const {
  nlohmann::json j;
  j["beta"] = beta_;
  j["f0"] = {{"knots", f0_.knot_scores()}, {"probs", f0_.knot_probs()}};
  j["f1"] = {{"knots", f1_.knot_scores()}, {"probs", f1_.knot_probs()}};
  return j.dump(2);
}

ScoreModel ScoreModel::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ScoreCdf f0(j.at("f0").at("knots").get<std::vector<double>>(),
              j.at("f0").at("probs").get<std::vector<double>>());
  ScoreCdf f1(j.at("f1").at("knots").get<std::vector<double>>(),
              j.at("f1").at("probs").get<std::vector<double>>());
  return ScoreModel(j.at("beta").get<double>(), std::move(f0), std::move(f1));
}

}  // namespace triage
