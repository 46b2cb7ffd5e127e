#pragma once

// Token allocation across languages and compute-optimal (N, D) splits.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slk/core.hpp"
#include "slk/mixture.hpp"

namespace slk {

inline constexpr double kDefaultFloor = 0.01;
inline constexpr double kDefaultFlopsPerParamToken = 6.0;
inline constexpr std::uint64_t kDefaultAllocationSeed = 42;

/// Per-language box on the proportions. Empty vectors mean the defaults
/// (floor 0.01, ceiling 1).
struct AllocationConstraints {
  std::vector<double> floor;
  std::vector<double> ceil;

  static AllocationConstraints uniform_box(std::size_t k, double floor, double ceil = 1.0);
};

struct AllocationOptions {
  std::size_t starts = 64;  // uniform + vertices + Dirichlet(1) draws
  std::uint64_t seed = kDefaultAllocationSeed;
  std::size_t max_iters = 5000;
  double armijo_c = 1e-4;
  unsigned threads = 0;
};

/// Euclidean projection onto {sum p = 1, lo <= p <= hi}. Exact: the
/// threshold is solved on the piecewise-linear segment that brackets it.
std::vector<double> project_to_box_simplex(std::span<const double> v, std::span<const double> lo,
                                           std::span<const double> hi);

/// Throws ConstraintError naming the violated bound when the box is empty.
void check_constraints(std::size_t k, const AllocationConstraints& c);

/// Multi-start projected gradient descent with Armijo backtracking.
/// Uniform proportions are start 0, so the plan is never worse than uniform
/// whenever uniform is feasible.
AllocationPlan optimize_proportions(double n, double d_all, const MixtureTemplate& model,
                                    const AllocationConstraints& constraints = {},
                                    const AllocationOptions& opts = {});

std::vector<double> tokens_from_proportions(std::span<const double> p, double d_total);

struct ComputeSplit {
  double n_opt;
  double d_opt;
  double predicted_loss;
};

/// Closed form of min L(n, d) s.t. flops * n * d = budget:
///   n* = (aN A / (aD B))^(1/(aN+aD)) * (budget/flops)^(aD/(aN+aD)),  d* = budget/(flops n*).
ComputeSplit compute_optimal_split(const PowerLawParams& params, double compute_budget,
                                   double flops_per_param_token = kDefaultFlopsPerParamToken);

struct WhatIfReport {
  std::vector<std::string> languages;
  std::vector<double> proportions;
  std::vector<double> token_counts;
  double predicted_loss;
  PowerLawTerms breakdown;
  double effective_tokens;
  MixtureExponents exponents;
  double uniform_loss;
  double delta_vs_uniform;  // predicted - uniform (negative = better)
};

WhatIfReport whatif(std::span<const double> p, double n, double d_all, const MixtureTemplate& model);
WhatIfReport whatif(const AllocationPlan& plan);

/// Human-readable table: language, proportion, tokens, change vs uniform.
std::string render_plan_table(const AllocationPlan& plan);

}  // namespace slk
