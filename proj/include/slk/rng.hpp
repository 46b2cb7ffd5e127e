#pragma once

// Portable deterministic randomness. std::mt19937_64 is bit-specified by the
// standard, but the std distributions are not, so uniform/normal/Dirichlet
// draws are derived here from raw 64-bit outputs.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace slk {

inline constexpr const char* kRngAlgorithm = "mt19937_64/splitmix64-seed/u53/box-muller";

/// Seed mixer used to derive independent child streams from one seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Child generator for stream `index`; parents are never shared across threads.
  Rng split(std::uint64_t index) const { return Rng(splitmix64(seed_mix() ^ splitmix64(index))); }

  std::uint64_t next() { return engine_(); }

  /// Uniform in (0, 1), 53 bits.
  double uniform() {
    double u;
    do {
      u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    } while (u == 0.0);
    return u;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Dirichlet(1, ..., 1): normalized unit exponentials.
  std::vector<double> dirichlet_ones(std::size_t k) {
    std::vector<double> v(k);
    double sum = 0.0;
    for (auto& x : v) {
      x = -std::log(uniform());
      sum += x;
    }
    for (auto& x : v) x /= sum;
    return v;
  }

 private:
  std::uint64_t seed_mix() const {
    std::mt19937_64 copy = engine_;
    return copy();
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace slk
