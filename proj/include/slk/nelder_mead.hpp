#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace slk {

struct NelderMeadOptions {
  std::size_t max_iters = 2000;  // total across restarts
  double tol = 1e-10;            // relative decrease of the best value ...
  std::size_t window = 50;       // ... measured over this many iterations
  std::size_t max_restarts = 8;
  double x_tol = 1e-14;          // simplex collapse, relative to |x|
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  std::size_t iterations;
  std::size_t restarts;
  bool converged;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free simplex descent with adaptive coefficients and restarts.
/// After each stall the simplex is rebuilt around the incumbent using the
/// initial step sizes; the run is converged once a restart yields no
/// relative improvement above `tol`.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             std::span<const double> step, const NelderMeadOptions& opts = {});

}  // namespace slk
