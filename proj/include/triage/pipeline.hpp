#ifndef TRIAGE_PIPELINE_HPP
#define TRIAGE_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "triage/arrivals.hpp"
#include "triage/bounds.hpp"
#include "triage/io.hpp"
#include "triage/policies.hpp"

namespace triage {

// One row of the combined long-format sweep output.
struct SweepRow {
  std::string source;  // empirical | analytic | upper
  std::string method;
  double k = 0.0;
  double value = 0.0;
  double se = 0.0;
};

struct EstimateResult {
  RateFunction rate;
  ScoreModel model;
  std::size_t episode_count = 0;
  std::size_t record_count = 0;
};

// Groups ingestion records into episodes (grouped by episode_id, ordered by
// first appearance, arrivals time-sorted). Records must carry scores and
// labels.
std::vector<Episode> episodes_from_records(
    const std::vector<EventRecord>& records, double tau);

// Arrival-times view of the same grouping, for rate estimation.
std::vector<ArrivalSequence> arrivals_from_records(
    const std::vector<EventRecord>& records, double tau);

// Rate + score-model estimation from labeled records (the model-fitting
// stage of the pipeline). Throws std::runtime_error when either class has
// no records.
EstimateResult estimate_from_records(const std::vector<EventRecord>& records,
                                     double tau, int bins, RateInterp interp);

// Synthetic episodes with per-episode derived seeds; episode i is identical
// whatever the worker count.
std::vector<Episode> synth_episodes(const RateFunction& rate,
                                    const ScoreModel& model, std::size_t count,
                                    std::uint64_t seed);

// Outcomes of one policy at one capacity over a fixed episode set.
// `policy` is one of static, static_optimal, dynamic, random, batch. The
// fixed-threshold policy uses `static_alpha`; static_optimal re-derives
// alpha*(k) from the model at every k. `curves` may be null when the
// dynamic policy is not requested.
std::vector<InspectionOutcome> run_policy_outcomes(
    const std::string& policy, const std::vector<Episode>& episodes,
    const ScoreModel& model, const RateFunction& rate,
    const CriticalCurveSet* curves, double k, std::uint64_t seed,
    double static_alpha);

// Empirical detection-rate curve of one policy over a capacity grid.
TradeoffCurve run_policy_curve(const std::string& policy,
                               const std::vector<Episode>& episodes,
                               const ScoreModel& model,
                               const RateFunction& rate,
                               const CriticalCurveSet* curves,
                               const std::vector<double>& k_grid,
                               std::uint64_t seed, double static_alpha);

// Analytic bound curves for the requested methods plus the end-to-end upper
// bound.
std::vector<BoundCurve> analytic_bounds(const ScoreModel& model,
                                        const RateFunction& rate,
                                        const CriticalCurveSet* curves,
                                        const std::vector<double>& k_grid,
                                        const std::vector<std::string>& methods,
                                        std::uint64_t reps, std::uint64_t seed,
                                        double static_alpha);

std::string tradeoff_csv(const std::vector<TradeoffCurve>& curves);
std::string bounds_csv(const std::vector<BoundCurve>& curves);
std::string combined_csv(const std::vector<SweepRow>& rows);
// Per-episode dump `policy,k,episode_id,n_k,selected,frauds_caught,
// frauds_total` (selected = number of inspections used).
std::string outcomes_csv(const std::string& policy, double k,
                         const std::vector<Episode>& episodes,
                         const std::vector<InspectionOutcome>& outcomes);

}  // namespace triage

#endif  // TRIAGE_PIPELINE_HPP
