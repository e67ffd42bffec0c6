#include "triage/critical_curves.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "triage/io.hpp"

namespace triage {

CriticalCurveSet::CriticalCurveSet(std::vector<double> grid_times,
                                   std::vector<std::vector<double>> alpha,
                                   std::uint64_t rate_hash,
                                   std::uint64_t score_hash)
    : grid_times_(std::move(grid_times)),
      alpha_(std::move(alpha)),
      rate_hash_(rate_hash),
      score_hash_(score_hash) {
  if (grid_times_.size() < 2) {
    throw std::invalid_argument("CriticalCurveSet: grid too small");
  }
  if (alpha_.empty()) {
    throw std::invalid_argument("CriticalCurveSet: no curves");
  }
  for (const auto& row : alpha_) {
    if (row.size() != grid_times_.size()) {
      throw std::invalid_argument("CriticalCurveSet: ragged curve matrix");
    }
  }
}

const std::vector<double>& CriticalCurveSet::curve(int j) const {
  if (j < 1 || j > budget()) {
    throw std::out_of_range("CriticalCurveSet::curve: j outside [1, n]");
  }
  return alpha_[static_cast<std::size_t>(j - 1)];
}

double CriticalCurveSet::threshold_at(int j, double t) const {
  const auto& row = curve(j);
  if (!(t >= 0.0) || t > horizon()) {
    throw std::domain_error("CriticalCurveSet::threshold_at: t outside [0,T]");
  }
  const double step = grid_times_[1] - grid_times_[0];
  const double pos = t / step;
  auto g = static_cast<std::size_t>(pos);
  if (g + 1 >= grid_times_.size()) return row.back();
  const double w = pos - static_cast<double>(g);
  return row[g] + w * (row[g + 1] - row[g]);
}

CriticalCurveSet CriticalCurveSet::sliced(int n) const {
  if (n < 1 || n > budget()) {
    throw std::out_of_range("CriticalCurveSet::sliced: n outside [1, budget]");
  }
  std::vector<std::vector<double>> head(alpha_.begin(), alpha_.begin() + n);
  return CriticalCurveSet(grid_times_, std::move(head), rate_hash_,
                          score_hash_);
}

void CriticalCurveSet::save(const std::string& path) const {
  std::ostringstream csv;
  csv << "t";
  for (int j = 1; j <= budget(); ++j) csv << ",alpha_" << j;
  csv << "\n";
  for (std::size_t g = 0; g < grid_times_.size(); ++g) {
    csv << fmt_double(grid_times_[g]);
    for (const auto& row : alpha_) csv << "," << fmt_double(row[g]);
    csv << "\n";
  }
  write_text_file(path, csv.str());

  nlohmann::json meta;
  meta["budget"] = budget();
  meta["grid_size"] = grid_times_.size();
  meta["horizon"] = horizon();
  meta["rate_hash"] = fmt_u64_hex(rate_hash_);
  meta["score_hash"] = fmt_u64_hex(score_hash_);
  write_text_file(path + ".meta.json", meta.dump(2) + "\n");
}

CriticalCurveSet CriticalCurveSet::load(const std::string& path) {
  const auto meta = nlohmann::json::parse(read_text_file(path + ".meta.json"));
  const auto rate_hash =
      std::stoull(meta.at("rate_hash").get<std::string>(), nullptr, 16);
  const auto score_hash =
      std::stoull(meta.at("score_hash").get<std::string>(), nullptr, 16);

  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(path + ": missing header");
  }
  const int n = meta.at("budget").get<int>();
  std::vector<double> times;
  std::vector<std::vector<double>> alpha(static_cast<std::size_t>(n));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');
    times.push_back(std::stod(field));
    for (auto& row : alpha) {
      if (!std::getline(ss, field, ',')) {
        throw std::runtime_error(path + ": short row");
      }
      row.push_back(std::stod(field));
    }
  }
  return CriticalCurveSet(std::move(times), std::move(alpha), rate_hash,
                          score_hash);
}

namespace {

// alpha_{j-1} interpolated halfway between grid points g-1 and g.
inline double midpoint(const std::vector<double>& prev, std::size_t g) {
  return 0.5 * (prev[g - 1] + prev[g]);
}

}  // namespace

CriticalCurveSet solve_curves(const RateFunction& rate, const ScoreCdf& fs,
                              int budget, std::size_t grid_size) {
  if (budget < 1) throw std::invalid_argument("solve_curves: budget < 1");
  if (grid_size < 2) throw std::invalid_argument("solve_curves: grid too small");

  const double horizon = rate.tau();
  const double step = horizon / static_cast<double>(grid_size - 1);
  std::vector<double> grid(grid_size);
  for (std::size_t g = 0; g < grid_size; ++g) {
    grid[g] = static_cast<double>(g) * step;
  }
  grid.back() = horizon;

  auto phi = [&fs](double a) {
    return fs.partial_expectation(std::clamp(a, 0.0, 1.0));
  };
  // lambda at grid points and at cell midpoints, precomputed once.
  std::vector<double> lam(grid_size), lam_mid(grid_size);
  for (std::size_t g = 0; g < grid_size; ++g) lam[g] = rate.rate(grid[g]);
  for (std::size_t g = 1; g < grid_size; ++g) {
    lam_mid[g] = rate.rate(grid[g] - 0.5 * step);
  }

  std::vector<std::vector<double>> alpha(
      static_cast<std::size_t>(budget), std::vector<double>(grid_size, 0.0));

  const double h = -step;  // integrating backward in time
  for (int j = 1; j <= budget; ++j) {
    auto& cur = alpha[static_cast<std::size_t>(j - 1)];
    const auto* prev =
        j > 1 ? &alpha[static_cast<std::size_t>(j - 2)] : nullptr;
    cur[grid_size - 1] = 0.0;  // terminal condition

    for (std::size_t g = grid_size - 1; g > 0; --g) {
      const double y = cur[g];
      const double p_right = prev ? phi((*prev)[g]) : 0.0;
      const double p_mid = prev ? phi(midpoint(*prev, g)) : 0.0;
      const double p_left = prev ? phi((*prev)[g - 1]) : 0.0;
      // The true solution keeps alpha_j <= alpha_{j-1}, where the bracket
      // is nonnegative; the max() guard keeps stage errors from flipping
      // its sign.
      auto rhs = [&phi](double lambda_t, double a, double p_prev) {
        return -lambda_t * std::max(phi(a) - p_prev, 0.0);
      };
      const double k1 = rhs(lam[g], y, p_right);
      const double k2 = rhs(lam_mid[g], y + 0.5 * h * k1, p_mid);
      const double k3 = rhs(lam_mid[g], y + 0.5 * h * k2, p_mid);
      const double k4 = rhs(lam[g - 1], y + h * k3, p_left);
      double next = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!std::isfinite(next)) {
        throw std::runtime_error(
            "solve_curves: non-finite value at curve " + std::to_string(j) +
            ", t = " + std::to_string(grid[g - 1]));
      }
      // Ordering and support clamps.
      next = std::clamp(next, 0.0, prev ? (*prev)[g - 1] : 1.0);
      cur[g - 1] = next;
    }
  }

  return CriticalCurveSet(std::move(grid), std::move(alpha),
                          rate.content_hash(), fs.content_hash());
}

}  // namespace triage
