#pragma once

// Random inputs for property tests, drawn from the library's seeded Rng so
// every failure replays from its case index.

#include <cmath>
#include <string>
#include <vector>

#include "slk/core.hpp"
#include "slk/rng.hpp"

namespace slk::gen {

inline double log_uniform(Rng& r, double lo, double hi) {
  return std::exp(r.uniform(std::log(lo), std::log(hi)));
}

/// Parameters in the range the published tables occupy.
inline PowerLawParams params(Rng& r) {
  return PowerLawParams(r.uniform(0.05, 5.0), r.uniform(0.05, 5.0), r.uniform(0.05, 1.5),
                        r.uniform(0.05, 1.5), r.uniform(0.0, 1.0));
}

inline std::vector<double> simplex_point(Rng& r, std::size_t k) { return r.dirichlet_ones(k); }

inline Matrix tau(Rng& r, std::size_t k, double lo = -0.1, double hi = 0.3) {
  Matrix t = zero_matrix(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) t[i][j] = r.uniform(lo, hi);
  return t;
}

inline std::vector<std::string> languages(std::size_t k) {
  static const std::vector<std::string> all{"python", "java",   "javascript", "typescript",
                                            "csharp", "go",     "rust"};
  return {all.begin(), all.begin() + static_cast<long>(k)};
}

/// Mixture template at budget-scale units (n, d in billions).
inline MixtureTemplate mixture(Rng& r, std::size_t k) {
  std::vector<PowerLawParams> ps;
  for (std::size_t i = 0; i < k; ++i) ps.push_back(params(r));
  return MixtureTemplate(languages(k), ps, tau(r, k), r.uniform(0.0, 2.0), r.uniform(0.1, 2.0),
                         r.uniform(0.5, 20.0));
}

inline double rel_err(double got, double want) {
  return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

}  // namespace slk::gen
