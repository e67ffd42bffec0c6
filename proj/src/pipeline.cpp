#include "triage/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "triage/arrivals.hpp"
#include "triage/parallel.hpp"

namespace triage {

namespace {

// Stable grouping by episode_id, ordered by first appearance.
std::vector<std::pair<std::string, std::vector<const EventRecord*>>>
group_records(const std::vector<EventRecord>& records) {
  std::vector<std::pair<std::string, std::vector<const EventRecord*>>> groups;
  std::map<std::string, std::size_t> index;
  for (const auto& rec : records) {
    auto [it, inserted] = index.try_emplace(rec.episode_id, groups.size());
    if (inserted) groups.push_back({rec.episode_id, {}});
    groups[it->second].second.push_back(&rec);
  }
  return groups;
}

}  // namespace

std::vector<Episode> episodes_from_records(
    const std::vector<EventRecord>& records, double tau) {
  std::vector<Episode> out;
  for (auto& [id, recs] : group_records(records)) {
    Episode ep;
    ep.id = id;
    ep.tau = tau;
    ep.arrivals.reserve(recs.size());
    for (const auto* r : recs) {
      if (r->score < 0.0 || r->label < 0) {
        throw std::runtime_error(
            "episodes_from_records: record lacks score or label");
      }
      if (!(r->t >= 0.0) || r->t > tau) {
        throw std::runtime_error("episodes_from_records: time outside [0,tau]");
      }
      ep.arrivals.push_back({r->t, r->score, r->label});
    }
    std::stable_sort(ep.arrivals.begin(), ep.arrivals.end(),
                     [](const Arrival& a, const Arrival& b) { return a.t < b.t; });
    out.push_back(std::move(ep));
  }
  return out;
}

std::vector<ArrivalSequence> arrivals_from_records(
    const std::vector<EventRecord>& records, double tau) {
  std::vector<ArrivalSequence> out;
  for (auto& [id, recs] : group_records(records)) {
    ArrivalSequence seq;
    seq.times.reserve(recs.size());
    for (const auto* r : recs) {
      if (!(r->t >= 0.0) || r->t > tau) {
        throw std::runtime_error("arrivals_from_records: time outside [0,tau]");
      }
      seq.times.push_back(r->t);
    }
    std::sort(seq.times.begin(), seq.times.end());
    out.push_back(std::move(seq));
  }
  return out;
}

EstimateResult estimate_from_records(const std::vector<EventRecord>& records,
                                     double tau, int bins, RateInterp interp) {
  if (records.empty()) {
    throw std::runtime_error("estimate_from_records: no records");
  }
  std::vector<double> scores0, scores1;
  for (const auto& rec : records) {
    if (rec.score < 0.0 || rec.label < 0) {
      throw std::runtime_error(
          "estimate_from_records: record lacks score or label");
    }
    (rec.label == 1 ? scores1 : scores0).push_back(rec.score);
  }
  if (scores1.size() < 2) {
    throw std::runtime_error(
        "estimate_from_records: need >= 2 minority-class records to fit F1");
  }
  if (scores0.size() < 2) {
    throw std::runtime_error(
        "estimate_from_records: need >= 2 majority-class records to fit F0");
  }
  const double beta = static_cast<double>(scores1.size()) /
                      static_cast<double>(records.size());
  auto arrivals = arrivals_from_records(records, tau);
  EstimateResult res{
      estimate_rate(arrivals, bins, tau, interp),
      ScoreModel(beta, fit_ecdf(std::move(scores0)), fit_ecdf(std::move(scores1))),
      arrivals.size(), records.size()};
  return res;
}

std::vector<Episode> synth_episodes(const RateFunction& rate,
                                    const ScoreModel& model, std::size_t count,
                                    std::uint64_t seed) {
  std::vector<Episode> out(count);
  parallel_for_index(count, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    out[i] = synth_episode(rate, model, rng);
    out[i].id = "ep" + std::to_string(i);
  });
  return out;
}

namespace {

std::uint64_t policy_stream(const std::string& policy, double k) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : policy) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  // Quantized k keeps the stream id stable under formatting round-trips.
  auto kq = static_cast<std::uint64_t>(std::llround(k * 1e9));
  for (int i = 0; i < 8; ++i) {
    h ^= (kq >> (8 * i)) & 0xffu;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::vector<InspectionOutcome> run_policy_outcomes(
    const std::string& policy, const std::vector<Episode>& episodes,
    const ScoreModel& model, const RateFunction& rate,
    const CriticalCurveSet* curves, double k, std::uint64_t seed,
    double static_alpha) {
  const double lambda_total = rate.total_mass();
  const int n_k = capacity_for(k, lambda_total);
  std::vector<InspectionOutcome> out(episodes.size());

  if (policy == "dynamic" && curves == nullptr) {
    throw std::invalid_argument("run_policy_outcomes: dynamic needs curves");
  }
  if (policy == "dynamic" && curves->budget() < n_k) {
    throw std::invalid_argument(
        "run_policy_outcomes: curves budget below n_k");
  }
  const double alpha =
      policy == "static_optimal" ? optimal_static_threshold(model, k)
                                 : static_alpha;
  const std::uint64_t stream = seed ^ policy_stream(policy, k);

  parallel_for_index(episodes.size(), [&](std::size_t i) {
    const Episode& ep = episodes[i];
    if (policy == "static" || policy == "static_optimal") {
      out[i] = run_static(ep, alpha, n_k);
      out[i].policy = policy;
    } else if (policy == "dynamic") {
      out[i] = run_dynamic(ep, *curves, n_k);
    } else if (policy == "random") {
      Rng rng(derive_seed(stream, i));
      out[i] = run_random(ep, rate, k, n_k, rng);
    } else if (policy == "batch") {
      out[i] = run_batch(ep, n_k);
    } else {
      throw std::invalid_argument("run_policy_outcomes: unknown policy " +
                                  policy);
    }
  });
  return out;
}

TradeoffCurve run_policy_curve(const std::string& policy,
                               const std::vector<Episode>& episodes,
                               const ScoreModel& model,
                               const RateFunction& rate,
                               const CriticalCurveSet* curves,
                               const std::vector<double>& k_grid,
                               std::uint64_t seed, double static_alpha) {
  TradeoffCurve curve;
  curve.policy = policy;
  curve.k_grid = k_grid;
  curve.psi_mean.resize(k_grid.size());
  curve.psi_se.resize(k_grid.size());
  curve.episodes_used.resize(k_grid.size());
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    const auto outcomes = run_policy_outcomes(policy, episodes, model, rate,
                                              curves, k_grid[i], seed,
                                              static_alpha);
    std::size_t used = 0;
    for (const auto& o : outcomes) used += o.frauds_total >= 1 ? 1 : 0;
    const auto [mean, se] = detection_rate(outcomes);
    curve.psi_mean[i] = mean;
    curve.psi_se[i] = se;
    curve.episodes_used[i] = used;
  }
  return curve;
}

std::vector<BoundCurve> analytic_bounds(const ScoreModel& model,
                                        const RateFunction& rate,
                                        const CriticalCurveSet* curves,
                                        const std::vector<double>& k_grid,
                                        const std::vector<std::string>& methods,
                                        std::uint64_t reps, std::uint64_t seed,
                                        double static_alpha) {
  const double lambda_total = rate.total_mass();
  std::vector<BoundCurve> out;
  for (const auto& method : methods) {
    BoundCurve bc;
    bc.method = method;
    bc.k_grid = k_grid;
    bc.values.resize(k_grid.size(), 0.0);
    bc.mc_se.resize(k_grid.size(), 0.0);
    bc.beta = model.beta();
    bc.lambda_total = lambda_total;
    bc.seed = seed;

    if (method == "static") {
      for (std::size_t i = 0; i < k_grid.size(); ++i) {
        bc.values[i] = bound_static(model, lambda_total, k_grid[i],
                                    static_alpha);
      }
    } else if (method == "static_optimal") {
      for (std::size_t i = 0; i < k_grid.size(); ++i) {
        bc.values[i] = bound_static_optimal(model, k_grid[i]);
      }
    } else if (method == "random") {
      for (std::size_t i = 0; i < k_grid.size(); ++i) {
        bc.values[i] = bound_random(lambda_total, k_grid[i]);
      }
    } else if (method == "upper") {
      for (std::size_t i = 0; i < k_grid.size(); ++i) {
        bc.values[i] = upper_bound(model.beta(), k_grid[i]);
      }
    } else if (method == "dynamic") {
      if (curves == nullptr) {
        throw std::invalid_argument("analytic_bounds: dynamic needs curves");
      }
      bc.reps = reps;
      std::vector<std::pair<double, double>> cells(k_grid.size());
      parallel_for_index(k_grid.size(), [&](std::size_t i) {
        Rng rng(derive_seed(seed ^ policy_stream(method, k_grid[i]), 0));
        cells[i] = bound_dynamic_mc(model, rate, *curves, k_grid[i], reps, rng);
      });
      for (std::size_t i = 0; i < k_grid.size(); ++i) {
        bc.values[i] = std::clamp(cells[i].first, 0.0, 1.0);
        bc.mc_se[i] = cells[i].second;
      }
    } else if (method == "batch") {
      bc.reps = reps;
      std::vector<std::pair<double, double>> cells(k_grid.size());
      parallel_for_index(k_grid.size(), [&](std::size_t i) {
        Rng rng(derive_seed(seed ^ policy_stream(method, k_grid[i]), 0));
        cells[i] = bound_batch_mc(model, lambda_total, k_grid[i], reps, rng);
      });
      for (std::size_t i = 0; i < k_grid.size(); ++i) {
        bc.values[i] = std::clamp(cells[i].first, 0.0, 1.0);
        bc.mc_se[i] = cells[i].second;
      }
    } else {
      throw std::invalid_argument("analytic_bounds: unknown method " + method);
    }
    out.push_back(std::move(bc));
  }
  return out;
}

std::string tradeoff_csv(const std::vector<TradeoffCurve>& curves) {
  std::ostringstream os;
  os << "policy,k,psi_mean,psi_se,episodes\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.k_grid.size(); ++i) {
      os << c.policy << "," << fmt_double(c.k_grid[i]) << ","
         << fmt_double(c.psi_mean[i]) << "," << fmt_double(c.psi_se[i]) << ","
         << c.episodes_used[i] << "\n";
    }
  }
  return os.str();
}

std::string bounds_csv(const std::vector<BoundCurve>& curves) {
  std::ostringstream os;
  os << "method,k,value,mc_se,reps,seed\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.k_grid.size(); ++i) {
      os << c.method << "," << fmt_double(c.k_grid[i]) << ","
         << fmt_double(c.values[i]) << "," << fmt_double(c.mc_se[i]) << ","
         << c.reps << "," << c.seed << "\n";
    }
  }
  return os.str();
}

std::string combined_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "source,method,k,value,se\n";
  for (const auto& r : rows) {
    os << r.source << "," << r.method << "," << fmt_double(r.k) << ","
       << fmt_double(r.value) << "," << fmt_double(r.se) << "\n";
  }
  return os.str();
}

std::string outcomes_csv(const std::string& policy, double k,
                         const std::vector<Episode>& episodes,
                         const std::vector<InspectionOutcome>& outcomes) {
  std::ostringstream os;
  os << "policy,k,episode_id,n_k,selected,frauds_caught,frauds_total\n";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    os << policy << "," << fmt_double(k) << "," << episodes[i].id << ","
       << o.capacity << "," << o.selected.size() << "," << o.frauds_caught
       << "," << o.frauds_total << "\n";
  }
  return os.str();
}

}  // namespace triage
