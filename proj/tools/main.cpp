// triagesim: capacity-limited inspection of streaming scored events.
//
// Subcommands: estimate, curves, bounds, simulate, sweep, synth. Every
// stochastic step derives from --seed, so a fixed seed reproduces output
// files byte for byte.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "triage/arrivals.hpp"
#include "triage/bounds.hpp"
#include "triage/critical_curves.hpp"
#include "triage/io.hpp"
#include "triage/pipeline.hpp"
#include "triage/policies.hpp"

namespace fs = std::filesystem;
using namespace triage;

namespace {

struct CommonOpts {
  double tau = 86400.0;
  std::vector<double> k_grid;
  std::vector<std::string> policies{"static_optimal", "dynamic", "random",
                                    "batch"};
  std::size_t episodes = 500;
  std::uint64_t reps = 2000;
  std::uint64_t seed = 1;
  std::size_t grid_size = 4096;
  int bins = 24;
  std::string out_dir = ".";
  std::string mode = "synthetic";
  double alpha = 0.5;
  bool piecewise_constant = false;
  std::size_t max_bad_rows = 0;
};

std::vector<double> default_k_grid() {
  std::vector<double> ks;
  for (int i = 1; i <= 20; ++i) ks.push_back(0.01 * i);
  return ks;
}

void add_common(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--tau", o->tau, "Horizon length in seconds");
  cmd->add_option("--k-grid", o->k_grid,
                  "Inspection capacities in [0,1] (comma separated)")
      ->delimiter(',');
  cmd->add_option("--seed", o->seed, "Base RNG seed");
  cmd->add_option("--out-dir", o->out_dir, "Output directory");
}

RateFunction load_rate(const std::string& path) {
  return RateFunction::from_json(read_text_file(path));
}

ScoreModel load_model(const std::string& path) {
  return ScoreModel::from_json(read_text_file(path));
}

std::vector<double> k_grid_or_default(const CommonOpts& o) {
  auto ks = o.k_grid.empty() ? default_k_grid() : o.k_grid;
  std::sort(ks.begin(), ks.end());
  for (double k : ks) {
    if (!(k >= 0.0 && k <= 1.0)) {
      throw CLI::ValidationError("--k-grid", "capacities must lie in [0, 1]");
    }
  }
  return ks;
}

void ensure_out_dir(const std::string& dir) {
  if (!dir.empty() && dir != ".") fs::create_directories(dir);
}

// Reuses a cached solve when the provenance matches, otherwise solves and
// persists. Cache key: rate hash, score hash, budget, grid size.
CriticalCurveSet load_or_solve_curves(const RateFunction& rate,
                                      const ScoreModel& model, int budget,
                                      std::size_t grid_size,
                                      const std::string& path) {
  if (fs::exists(path) && fs::exists(path + ".meta.json")) {
    try {
      auto cached = CriticalCurveSet::load(path);
      if (cached.rate_hash() == rate.content_hash() &&
          cached.score_hash() == model.fs().content_hash() &&
          cached.budget() >= budget && cached.grid_size() == grid_size) {
        return cached;
      }
    } catch (const std::exception&) {
      // fall through to a fresh solve
    }
  }
  auto curves = solve_curves(rate, model.fs(), budget, grid_size);
  curves.save(path);
  return curves;
}

int max_capacity(const std::vector<double>& ks, double lambda_total) {
  int n = 0;
  for (double k : ks) n = std::max(n, capacity_for(k, lambda_total));
  return n;
}

bool wants_policy(const std::vector<std::string>& ps, const std::string& p) {
  return std::find(ps.begin(), ps.end(), p) != ps.end();
}

// ---------------------------------------------------------------- estimate

int cmd_estimate(const std::string& episodes_path, const CommonOpts& o) {
  IngestStats stats;
  const auto records = read_event_csv(episodes_path, &stats, &std::cerr);
  if (!stats.has_scores || !stats.has_labels) {
    std::cerr << "estimate: CSV needs score and label columns\n";
    return 2;
  }
  const auto est = estimate_from_records(
      records, o.tau, o.bins,
      o.piecewise_constant ? RateInterp::kConstant : RateInterp::kLinear);

  ensure_out_dir(o.out_dir);
  write_text_file((fs::path(o.out_dir) / "rate.json").string(),
                  est.rate.to_json() + "\n");
  write_text_file((fs::path(o.out_dir) / "score_model.json").string(),
                  est.model.to_json() + "\n");

  std::cout << "episodes: " << est.episode_count << "\n"
            << "records: " << est.record_count << "\n"
            << "beta: " << fmt_double(est.model.beta()) << "\n"
            << "lambda_total: " << fmt_double(est.rate.total_mass()) << "\n";
  if (stats.clamped_scores > 0) {
    std::cerr << "estimate: clamped " << stats.clamped_scores
              << " scores into [0, 1]\n";
  }
  if (stats.malformed > 0) {
    std::cerr << "estimate: " << stats.malformed << " malformed rows\n";
    if (stats.malformed > o.max_bad_rows) return 1;
  }
  return 0;
}

// ------------------------------------------------------------------ curves

int cmd_curves(const std::string& rate_path, const std::string& model_path,
               int budget, const CommonOpts& o) {
  if (budget <= 0) {
    std::cerr << "curves: --budget must be positive\n";
    return 2;
  }
  const auto rate = load_rate(rate_path);
  const auto model = load_model(model_path);
  ensure_out_dir(o.out_dir);
  const auto path = (fs::path(o.out_dir) / "curves.csv").string();
  const auto curves =
      load_or_solve_curves(rate, model, budget, o.grid_size, path);
  std::cout << "curves: " << curves.budget() << " x " << curves.grid_size()
            << " grid written to " << path << "\n";
  return 0;
}

// ------------------------------------------------------------------ bounds

int cmd_bounds(const std::string& rate_path, const std::string& model_path,
               const std::string& curves_path,
               const std::vector<std::string>& methods, const CommonOpts& o) {
  const auto rate = load_rate(rate_path);
  const auto model = load_model(model_path);
  const auto ks = k_grid_or_default(o);

  std::optional<CriticalCurveSet> curves;
  if (wants_policy(methods, "dynamic")) {
    if (curves_path.empty()) {
      std::cerr << "bounds: --curves required for the dynamic method\n";
      return 2;
    }
    curves = CriticalCurveSet::load(curves_path);
  }

  const auto bcs = analytic_bounds(model, rate, curves ? &*curves : nullptr,
                                   ks, methods, o.reps, o.seed, o.alpha);
  ensure_out_dir(o.out_dir);
  const auto path = (fs::path(o.out_dir) / "bounds.csv").string();
  write_text_file(path, bounds_csv(bcs));
  std::cout << "bounds: " << methods.size() << " methods x " << ks.size()
            << " capacities written to " << path << "\n";
  return 0;
}

// ---------------------------------------------------------------- simulate

std::vector<Episode> gather_episodes(const CommonOpts& o,
                                     const std::string& episodes_path,
                                     const RateFunction& rate,
                                     const ScoreModel& model) {
  if (o.mode == "real") {
    if (episodes_path.empty()) {
      throw CLI::ValidationError("--episodes-csv",
                                 "required when --mode real");
    }
    IngestStats stats;
    const auto records = read_event_csv(episodes_path, &stats, &std::cerr);
    return episodes_from_records(records, o.tau);
  }
  return synth_episodes(rate, model, o.episodes, o.seed);
}

int cmd_simulate(const std::string& rate_path, const std::string& model_path,
                 const std::string& curves_path,
                 const std::string& episodes_path,
                 const std::string& dump_policy, const CommonOpts& o) {
  const auto rate = load_rate(rate_path);
  const auto model = load_model(model_path);
  const auto ks = k_grid_or_default(o);
  const auto episodes = gather_episodes(o, episodes_path, rate, model);

  std::optional<CriticalCurveSet> curves;
  if (wants_policy(o.policies, "dynamic")) {
    if (curves_path.empty()) {
      std::cerr << "simulate: --curves required for the dynamic policy\n";
      return 2;
    }
    curves = CriticalCurveSet::load(curves_path);
    const int need = max_capacity(ks, rate.total_mass());
    if (curves->budget() < need) {
      std::cerr << "simulate: curves budget " << curves->budget()
                << " below required " << need << "\n";
      return 2;
    }
  }

  std::vector<TradeoffCurve> tcs;
  for (const auto& policy : o.policies) {
    tcs.push_back(run_policy_curve(policy, episodes, model, rate,
                                   curves ? &*curves : nullptr, ks, o.seed,
                                   o.alpha));
  }
  ensure_out_dir(o.out_dir);
  const auto path = (fs::path(o.out_dir) / "tradeoff.csv").string();
  write_text_file(path, tradeoff_csv(tcs));

  if (!dump_policy.empty()) {
    std::ostringstream all;
    bool first = true;
    for (double k : ks) {
      const auto outs =
          run_policy_outcomes(dump_policy, episodes, model, rate,
                              curves ? &*curves : nullptr, k, o.seed, o.alpha);
      auto text = outcomes_csv(dump_policy, k, episodes, outs);
      if (!first) text.erase(0, text.find('\n') + 1);  // keep one header
      all << text;
      first = false;
    }
    write_text_file((fs::path(o.out_dir) / "outcomes.csv").string(),
                    all.str());
  }
  std::cout << "simulate: " << o.policies.size() << " policies x "
            << ks.size() << " capacities over " << episodes.size()
            << " episodes written to " << path << "\n";
  return 0;
}

// ------------------------------------------------------------------- synth

int cmd_synth(const std::string& rate_shape, double rate_mean,
              double rate_amplitude, double rate_cycles,
              const std::string& rate_file, const std::string& model_path,
              double beta, std::vector<double> f0_knots,
              std::vector<double> f0_probs, std::vector<double> f1_knots,
              std::vector<double> f1_probs, const CommonOpts& o) {
  std::optional<RateFunction> rate;
  if (!rate_file.empty()) {
    rate = load_rate(rate_file);
  } else if (rate_shape == "constant") {
    rate = RateFunction::constant(rate_mean, o.tau);
  } else if (rate_shape == "sinusoid") {
    std::vector<double> times, rates;
    const int knots = 193;
    for (int i = 0; i < knots; ++i) {
      const double t = o.tau * static_cast<double>(i) / (knots - 1);
      times.push_back(t);
      rates.push_back(std::max(
          0.0, rate_mean * (1.0 + rate_amplitude *
                                      std::sin(2.0 * M_PI * rate_cycles * t /
                                               o.tau))));
    }
    rate = RateFunction(std::move(times), std::move(rates));
  } else {
    std::cerr << "synth: unknown --rate-shape " << rate_shape << "\n";
    return 2;
  }

  std::optional<ScoreModel> model;
  if (!model_path.empty()) {
    model = load_model(model_path);
  } else {
    if (f0_knots.empty() || f1_knots.empty()) {
      std::cerr << "synth: provide --model or the --f0/--f1 knot lists\n";
      return 2;
    }
    model = ScoreModel(beta, ScoreCdf(std::move(f0_knots), std::move(f0_probs)),
                       ScoreCdf(std::move(f1_knots), std::move(f1_probs)));
  }

  const auto episodes = synth_episodes(*rate, *model, o.episodes, o.seed);
  std::ostringstream csv;
  csv << "episode_id,t_seconds,score,label\n";
  for (const auto& ep : episodes) {
    for (const auto& a : ep.arrivals) {
      csv << ep.id << "," << fmt_double(a.t) << "," << fmt_double(a.score)
          << "," << a.label << "\n";
    }
  }
  ensure_out_dir(o.out_dir);
  const auto path = (fs::path(o.out_dir) / "episodes.csv").string();
  write_text_file(path, csv.str());
  std::cout << "synth: " << episodes.size() << " episodes written to " << path
            << "\n";
  return 0;
}

// ------------------------------------------------------------------- sweep

struct CheckReport {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int cmd_sweep(const std::string& episodes_path, const std::string& sim_path,
              const CommonOpts& o) {
  ensure_out_dir(o.out_dir);
  IngestStats stats;
  const auto records = read_event_csv(episodes_path, &stats, &std::cerr);
  const auto est = estimate_from_records(
      records, o.tau, o.bins,
      o.piecewise_constant ? RateInterp::kConstant : RateInterp::kLinear);
  const auto& rate = est.rate;
  const auto& model = est.model;
  write_text_file((fs::path(o.out_dir) / "rate.json").string(),
                  rate.to_json() + "\n");
  write_text_file((fs::path(o.out_dir) / "score_model.json").string(),
                  model.to_json() + "\n");

  const auto ks = k_grid_or_default(o);
  const double lambda_total = rate.total_mass();
  const int budget = std::max(1, max_capacity(ks, lambda_total));

  const auto curves_path = (fs::path(o.out_dir) / "curves.csv").string();
  const auto curves =
      load_or_solve_curves(rate, model, budget, o.grid_size, curves_path);

  // Episodes for the empirical side: held-out file in real mode, model
  // draws in synthetic mode.
  const auto episodes = gather_episodes(
      o, sim_path.empty() ? episodes_path : sim_path, rate, model);

  std::vector<TradeoffCurve> tcs;
  for (const auto& policy : o.policies) {
    tcs.push_back(run_policy_curve(policy, episodes, model, rate, &curves, ks,
                                   o.seed, o.alpha));
  }
  write_text_file((fs::path(o.out_dir) / "tradeoff.csv").string(),
                  tradeoff_csv(tcs));

  const auto bcs = analytic_bounds(model, rate, &curves, ks, o.policies,
                                   o.reps, o.seed, o.alpha);
  write_text_file((fs::path(o.out_dir) / "bounds.csv").string(),
                  bounds_csv(bcs));

  // Combined long-format table.
  std::vector<SweepRow> rows;
  for (const auto& tc : tcs) {
    for (std::size_t i = 0; i < tc.k_grid.size(); ++i) {
      rows.push_back({"empirical", tc.policy, tc.k_grid[i], tc.psi_mean[i],
                      tc.psi_se[i]});
    }
  }
  for (const auto& bc : bcs) {
    for (std::size_t i = 0; i < bc.k_grid.size(); ++i) {
      rows.push_back({"analytic", bc.method, bc.k_grid[i], bc.values[i],
                      bc.mc_se[i]});
    }
  }
  for (double k : ks) {
    rows.push_back({"upper", "upper", k, upper_bound(model.beta(), k), 0.0});
  }
  write_text_file((fs::path(o.out_dir) / "combined.csv").string(),
                  combined_csv(rows));

  // Self-checks: value ranges, the end-to-end cap, and the qualitative
  // ordering batch >= dynamic >= static >= random (within 2 SE).
  CheckReport checks;
  for (const auto& row : rows) {
    checks.expect(row.value >= 0.0 && row.value <= 1.0 + 1e-12,
                  "value outside [0,1] for " + row.method);
    if (row.source != "upper") {
      const double cap = upper_bound(model.beta(), row.k);
      checks.expect(row.value <= cap + 2.0 * row.se + 1e-9,
                    "upper-bound cap violated by " + row.source + "/" +
                        row.method + " at k = " + fmt_double(row.k));
    }
  }
  auto curve_of = [&tcs](const std::string& name) -> const TradeoffCurve* {
    for (const auto& tc : tcs) {
      if (tc.policy == name) return &tc;
    }
    return nullptr;
  };
  const auto* bp = curve_of("batch");
  const auto* dt = curve_of("dynamic");
  const auto* st = curve_of("static_optimal");
  const auto* rs = curve_of("random");
  auto dominates = [&checks, &ks](const TradeoffCurve* hi,
                                  const TradeoffCurve* lo,
                                  const std::string& what) {
    if (hi == nullptr || lo == nullptr) return;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const double slack = 2.0 * std::sqrt(hi->psi_se[i] * hi->psi_se[i] +
                                           lo->psi_se[i] * lo->psi_se[i]);
      checks.expect(hi->psi_mean[i] >= lo->psi_mean[i] - slack,
                    what + " ordering violated at k = " + fmt_double(ks[i]));
    }
  };
  dominates(bp, dt, "batch>=dynamic");
  dominates(dt, st, "dynamic>=static");
  dominates(st, rs, "static>=random");

  // Summary with the headline gaps.
  std::ostringstream summary;
  summary << "sweep summary\n"
          << "  episodes: " << episodes.size() << "\n"
          << "  beta: " << fmt_double(model.beta()) << "\n"
          << "  lambda_total: " << fmt_double(lambda_total) << "\n"
          << "  budget(max): " << budget << "\n\n";
  summary << "  k";
  for (const auto& tc : tcs) summary << "," << tc.policy;
  summary << ",upper\n";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    summary << "  " << fmt_double(ks[i]);
    for (const auto& tc : tcs) summary << "," << fmt_double(tc.psi_mean[i]);
    summary << "," << fmt_double(upper_bound(model.beta(), ks[i])) << "\n";
  }
  if (bp && dt) {
    double gap = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      gap = std::max(gap, bp->psi_mean[i] - dt->psi_mean[i]);
    }
    summary << "\n  max DT-vs-BP gap: " << fmt_double(gap) << "\n";
  }
  if (bp && st) {
    double gap = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      gap = std::max(gap, bp->psi_mean[i] - st->psi_mean[i]);
    }
    summary << "  max ST-vs-BP gap: " << fmt_double(gap) << "\n";
  }
  summary << "  self-checks: "
          << (checks.failures.empty()
                  ? "all passed"
                  : std::to_string(checks.failures.size()) + " failed")
          << "\n";
  for (const auto& f : checks.failures) summary << "    FAIL " << f << "\n";
  write_text_file((fs::path(o.out_dir) / "summary.txt").string(),
                  summary.str());
  std::cout << summary.str();
  return checks.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detection-rate / inspection-capacity tradeoffs for streaming "
               "scored events"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value config file; flags win");

  CommonOpts o;

  // estimate
  auto* est = app.add_subcommand(
      "estimate", "Fit the arrival rate and score model from an episodes CSV");
  std::string episodes_path;
  est->add_option("--episodes-csv", episodes_path,
                  "CSV episode_id,t_seconds,score,label")
      ->required();
  est->add_option("--bins", o.bins, "Histogram bins for the rate estimator");
  est->add_flag("--piecewise-constant", o.piecewise_constant,
                "Keep the histogram steps (preserves total mass exactly)");
  est->add_option("--max-bad-rows", o.max_bad_rows,
                  "Tolerated malformed rows before a nonzero exit");
  add_common(est, &o);

  // curves
  auto* cur = app.add_subcommand(
      "curves", "Solve the threshold curves for a maximum budget");
  std::string rate_path, model_path, curves_path;
  int budget = 0;
  cur->add_option("--rate", rate_path, "rate.json")->required();
  cur->add_option("--model", model_path, "score_model.json")->required();
  cur->add_option("--budget", budget, "Largest inspection budget n_k")
      ->required();
  cur->add_option("--grid-size", o.grid_size, "Solver grid points");
  add_common(cur, &o);

  // bounds
  auto* bnd = app.add_subcommand(
      "bounds", "Evaluate the analytic detection-rate bounds");
  std::vector<std::string> methods{"static_optimal", "dynamic", "random",
                                   "batch", "upper"};
  bnd->add_option("--rate", rate_path, "rate.json")->required();
  bnd->add_option("--model", model_path, "score_model.json")->required();
  bnd->add_option("--curves", curves_path, "curves.csv (for dynamic)");
  bnd->add_option("--methods", methods,
                  "static,static_optimal,dynamic,random,batch,upper")
      ->delimiter(',');
  bnd->add_option("--reps", o.reps, "Monte Carlo replications");
  bnd->add_option("--alpha", o.alpha, "Threshold for the fixed static bound");
  add_common(bnd, &o);

  // simulate
  auto* sim = app.add_subcommand(
      "simulate", "Run the selection policies over episodes");
  std::string sim_episodes, dump_policy;
  sim->add_option("--rate", rate_path, "rate.json")->required();
  sim->add_option("--model", model_path, "score_model.json")->required();
  sim->add_option("--curves", curves_path, "curves.csv (for dynamic)");
  sim->add_option("--mode", o.mode, "real | synthetic")
      ->check(CLI::IsMember({"real", "synthetic"}));
  sim->add_option("--episodes-csv", sim_episodes,
                  "Held-out episodes (real mode)");
  sim->add_option("--episodes", o.episodes, "Episode count (synthetic mode)");
  sim->add_option("--policies", o.policies,
                  "static,static_optimal,dynamic,random,batch")
      ->delimiter(',');
  sim->add_option("--alpha", o.alpha, "Threshold for the static policy");
  sim->add_option("--dump-outcomes", dump_policy,
                  "Also write per-episode outcomes for this policy");
  add_common(sim, &o);

  // sweep
  auto* swp = app.add_subcommand(
      "sweep", "estimate -> curves -> bounds -> simulate, with self-checks");
  std::string sweep_sim_path;
  swp->add_option("--episodes-csv", episodes_path,
                  "CSV episode_id,t_seconds,score,label")
      ->required();
  swp->add_option("--episodes-sim-csv", sweep_sim_path,
                  "Held-out episodes for the empirical side (defaults to "
                  "--episodes-csv in real mode)");
  swp->add_option("--mode", o.mode, "real | synthetic")
      ->check(CLI::IsMember({"real", "synthetic"}));
  swp->add_option("--episodes", o.episodes, "Episode count (synthetic mode)");
  swp->add_option("--policies", o.policies, "Policies to run")->delimiter(',');
  swp->add_option("--bins", o.bins, "Histogram bins for the rate estimator");
  swp->add_flag("--piecewise-constant", o.piecewise_constant,
                "Keep the histogram steps (preserves total mass exactly)");
  swp->add_option("--reps", o.reps, "Monte Carlo replications");
  swp->add_option("--grid-size", o.grid_size, "Solver grid points");
  swp->add_option("--alpha", o.alpha, "Threshold for the static policy");
  add_common(swp, &o);

  // synth
  auto* syn = app.add_subcommand(
      "synth", "Generate an episodes CSV from a declared model");
  std::string rate_shape = "constant", rate_file, synth_model;
  double rate_mean = 0.05, rate_amplitude = 0.5, rate_cycles = 1.0;
  double beta = 0.035;
  std::vector<double> f0_knots, f0_probs, f1_knots, f1_probs;
  syn->add_option("--rate-shape", rate_shape, "constant | sinusoid");
  syn->add_option("--rate-mean", rate_mean, "Mean intensity (events/second)");
  syn->add_option("--rate-amplitude", rate_amplitude, "Sinusoid amplitude");
  syn->add_option("--rate-cycles", rate_cycles, "Sinusoid cycles per horizon");
  syn->add_option("--rate-file", rate_file, "rate.json (overrides shape)");
  syn->add_option("--model", synth_model, "score_model.json");
  syn->add_option("--beta", beta, "Minority-class prior");
  syn->add_option("--f0-knots", f0_knots, "F0 knot scores")->delimiter(',');
  syn->add_option("--f0-probs", f0_probs, "F0 knot probabilities")
      ->delimiter(',');
  syn->add_option("--f1-knots", f1_knots, "F1 knot scores")->delimiter(',');
  syn->add_option("--f1-probs", f1_probs, "F1 knot probabilities")
      ->delimiter(',');
  syn->add_option("--episodes", o.episodes, "Episode count");
  add_common(syn, &o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (est->parsed()) return cmd_estimate(episodes_path, o);
    if (cur->parsed()) return cmd_curves(rate_path, model_path, budget, o);
    if (bnd->parsed()) {
      return cmd_bounds(rate_path, model_path, curves_path, methods, o);
    }
    if (sim->parsed()) {
      return cmd_simulate(rate_path, model_path, curves_path, sim_episodes,
                          dump_policy, o);
    }
    if (swp->parsed()) return cmd_sweep(episodes_path, sweep_sim_path, o);
    if (syn->parsed()) {
      return cmd_synth(rate_shape, rate_mean, rate_amplitude, rate_cycles,
                       rate_file, synth_model, beta, std::move(f0_knots),
                       std::move(f0_probs), std::move(f1_knots),
                       std::move(f1_probs), o);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
