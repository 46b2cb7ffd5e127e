#include "slk/oracle.hpp"

#include <cmath>
#include <limits>

#include "slk/error.hpp"
#include "slk/rng.hpp"

namespace slk {

std::vector<double> paper_model_sizes(GridUnit unit) {
  if (unit == GridUnit::raw)
    return {100e6, 200e6, 400e6, 600e6, 1100e6, 1300e6, 1600e6, 2000e6, 2400e6, 3100e6};
  return {0.1, 0.2, 0.4, 0.6, 1.1, 1.3, 1.6, 2.0, 2.4, 3.1};
}

std::vector<double> paper_token_budgets(GridUnit unit) {
  if (unit == GridUnit::raw) return {2e9, 4e9, 8e9, 16e9, 32e9, 64e9};
  return {2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
}

std::vector<GridPoint> paper_grid(GridUnit unit) {
  std::vector<GridPoint> grid;
  for (double n : paper_model_sizes(unit))
    for (double d : paper_token_budgets(unit)) grid.emplace_back(n, d);
  return grid;
}

std::vector<ExperimentRecord> generate_surface(const PowerLawParams& params,
                                               std::span<const GridPoint> grid,
                                               const NoiseSpec& noise, const Tag& tag,
                                               const std::string& run_prefix) {
  if (grid.empty()) throw ArgumentError("surface grid is empty");
  if (!(noise.sigma >= 0) || !std::isfinite(noise.sigma))
    throw ArgumentError("noise sigma must be non-negative");
  Rng rng(noise.seed);
  const bool noisy = noise.kind == NoiseKind::lognormal && noise.sigma > 0;
  std::vector<ExperimentRecord> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [n, d] = grid[i];
    double loss = evaluate_power_law(params, n, d);
    if (noisy) loss *= std::exp(noise.sigma * rng.normal());
    out.emplace_back(run_prefix + "-" + tag.key() + "-" + std::to_string(i), tag, n, d, loss);
  }
  return out;
}

SimplexSearchResult grid_search_simplex(const SimplexObjective& objective, std::size_t k,
                                        std::size_t resolution) {
  if (k < 2) throw ArgumentError("grid_search_simplex needs k >= 2");
  if (k > 4) throw GuardError("grid_search_simplex is limited to k <= 4 (got " +
                              std::to_string(k) + ")");
  if (resolution < 1) throw ArgumentError("resolution must be >= 1");

  const double res = static_cast<double>(resolution);
  std::vector<std::size_t> counts(k, 0);
  std::vector<double> p(k);
  SimplexSearchResult best{{}, std::numeric_limits<double>::infinity()};

  // Lexicographic enumeration: counts[0..k-2] free, last takes the remainder.
  auto visit = [&] {
    for (std::size_t i = 0; i < k; ++i) p[i] = static_cast<double>(counts[i]) / res;
    const double v = objective(p);
    if (v < best.best_value) best = {p, v};
  };
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t left) {
    if (idx == k - 1) {
      counts[idx] = left;
      visit();
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[idx] = c;
      rec(idx + 1, left - c);
    }
  };
  rec(0, resolution);
  return best;
}

FrontierPoint grid_search_frontier(const PowerLawParams& params, double budget,
                                   double flops_factor, std::size_t points) {
  if (points < 3) throw ArgumentError("frontier scan needs at least 3 points");
  if (!(budget > 0) || !(flops_factor > 0))
    throw ArgumentError("budget and flops factor must be positive");

  const double nd = budget / flops_factor;  // n * d on the constraint
  auto loss_at = [&](double log_n) {
    const double n = std::exp(log_n);
    const double d = nd / n;
    const double v = params.A() * std::pow(n, -params.alpha_n()) +
                     params.B() * std::pow(d, -params.alpha_d()) + params.l_inf();
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  const double centre = 0.5 * std::log(nd);
  double lo = centre - 60.0;
  double hi = centre + 60.0;
  double best_x = centre;
  double best_v = loss_at(centre);
  for (int round = 0; round < 64 && hi - lo > 1e-12 * std::max(1.0, std::abs(best_x)); ++round) {
    const double step = (hi - lo) / static_cast<double>(points - 1);
    std::size_t arg = 0;
    double arg_v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points; ++i) {
      const double v = loss_at(lo + step * static_cast<double>(i));
      if (v < arg_v) {
        arg_v = v;
        arg = i;
      }
    }
    best_x = lo + step * static_cast<double>(arg);
    best_v = arg_v;
    const double new_lo = lo + step * static_cast<double>(arg == 0 ? 0 : arg - 1);
    const double new_hi = lo + step * static_cast<double>(std::min(arg + 1, points - 1));
    if (new_hi - new_lo >= hi - lo) break;
    lo = new_lo;
    hi = new_hi;
  }
  const double n = std::exp(best_x);
  return {n, nd / n, best_v};
}

}  // namespace slk
