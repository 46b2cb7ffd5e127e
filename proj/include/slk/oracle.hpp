#pragma once

// Ground-truth generators and brute-force reference solvers. Nothing here
// calls into the fitting or allocation code it is used to check.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slk/core.hpp"

namespace slk {

enum class NoiseKind { none, lognormal };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::none;
  double sigma = 0.0;
  std::uint64_t seed = 42;
};

/// Units of the grid coordinates: raw counts, or billions of params/tokens.
enum class GridUnit { raw, billions };

using GridPoint = std::pair<double, double>;  // (n, d)

/// 10 model sizes (0.1B .. 3.1B) x 6 token budgets (2B .. 64B), sizes outer.
std::vector<GridPoint> paper_grid(GridUnit unit = GridUnit::raw);
std::vector<double> paper_model_sizes(GridUnit unit = GridUnit::raw);
std::vector<double> paper_token_budgets(GridUnit unit = GridUnit::raw);

/// val_loss = L(n, d) * exp(eps), eps ~ Normal(0, sigma^2) from the seeded generator.
std::vector<ExperimentRecord> generate_surface(const PowerLawParams& params,
                                               std::span<const GridPoint> grid,
                                               const NoiseSpec& noise, const Tag& tag,
                                               const std::string& run_prefix = "synth");

struct SimplexSearchResult {
  std::vector<double> best_p;
  double best_value;
};

using SimplexObjective = std::function<double(std::span<const double>)>;

/// Exhaustive search over all compositions of `resolution` into k parts
/// (2 <= k <= 4). Ties resolve to the lexicographically smallest p.
SimplexSearchResult grid_search_simplex(const SimplexObjective& objective, std::size_t k,
                                        std::size_t resolution);

struct FrontierPoint {
  double n;
  double d;
  double loss;
};

/// Minimizes A n^-aN + B d^-aD + L_inf on flops * n * d = budget by a
/// log-spaced scan of n with `points` samples, re-scanned around the best
/// sample until the bracket is below relative 1e-12.
FrontierPoint grid_search_frontier(const PowerLawParams& params, double budget,
                                   double flops_factor, std::size_t points);

}  // namespace slk
