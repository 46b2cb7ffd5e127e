#pragma once

// Robust multi-start estimation of the two-term power law.
//
// The optimizer works on theta = (log A, log B, alpha_N, alpha_D, log L_inf)
// so that A, B and L_inf stay positive without projection. Each seed of the
// init grid fixes (alpha_N, alpha_D, L_inf); A and B are then solved by
// least squares before Nelder-Mead refines all five coordinates. The best
// seed wins, ties going to the lowest seed index.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slk/core.hpp"
#include "slk/error.hpp"

namespace slk {

struct Bounds {
  double lo;
  double hi;
};

struct FitBounds {
  Bounds a{1e-14, 1e14};
  Bounds b{1e-14, 1e14};
  Bounds alpha_n{0.0, kMaxExponent};
  Bounds alpha_d{0.0, kMaxExponent};
  /// L_inf below lo is represented as lo (the log parameterization has no zero).
  Bounds l_inf{1e-14, 1e6};
};

/// Seed exponents plus L_inf as a fraction of the smallest observed loss.
struct FitSeed {
  double alpha_n;
  double alpha_d;
  double l_inf_fraction;
};

struct FitConfig {
  double huber_delta = 1e-3;
  std::size_t max_iters = 2000;
  double tol = 1e-10;
  std::vector<FitSeed> init_grid;
  FitBounds bounds;
  bool log_target = true;
  /// Worker threads for the seed loop; 0 picks hardware concurrency.
  unsigned threads = 0;
  std::string preset = "custom";

  void validate() const;
};

inline constexpr std::size_t kMaxSeeds = 75;

/// Cartesian product alpha_N x alpha_D x L_inf fraction, capped at 75 seeds.
std::vector<FitSeed> make_init_grid(std::span<const double> alphas,
                                    std::span<const double> l_inf_fractions);

/// alpha in {0.1, 0.3, 0.5, 1, 3}; L_inf in {0, 0.5, 0.9} x min observed loss.
FitConfig chinchilla_preset();
/// As chinchilla, with seeds reaching the steep exponents of translation laws.
FitConfig translation_preset();
FitConfig preset_by_name(const std::string& name);

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::optional<FitResult> best)
      : Error(what), best_(std::move(best)) {}
  const std::optional<FitResult>& best_so_far() const { return best_; }

 private:
  std::optional<FitResult> best_;
};

FitResult fit_chinchilla(std::span<const ExperimentRecord> records,
                         const FitConfig& cfg = chinchilla_preset());

/// Same functional form and contract as fit_chinchilla, translation seeds.
FitResult fit_two_term(std::span<const ExperimentRecord> records,
                       const FitConfig& cfg = translation_preset());

/// Weighted Huber objective of `params` on `records` under `cfg`.
double fit_objective(std::span<const ExperimentRecord> records, const FitConfig& cfg,
                     const PowerLawParams& params);

/// Starting parameters for every seed, in init-grid order.
std::vector<PowerLawParams> seed_parameters(std::span<const ExperimentRecord> records,
                                            const FitConfig& cfg);

struct RankEntry {
  std::string tag;
  double l_inf;
};

/// Ascending L_inf; members of one group differ from their neighbour by < 1e-4.
using RankGroup = std::vector<RankEntry>;

std::vector<RankGroup> rank_by_irreducible_loss(const std::map<std::string, FitResult>& fits,
                                                double tie_tolerance = 1e-4);

struct GoodnessOfFit {
  double rmse;
  double r_squared;
  double max_abs_residual;
};

GoodnessOfFit goodness_of_fit(const FitResult& result, std::span<const ExperimentRecord> records);

}  // namespace slk
