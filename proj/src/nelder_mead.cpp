#include "slk/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "slk/error.hpp"

namespace slk {

namespace {

double safe_eval(const Objective& f, std::span<const double> x) {
  const double v = f(x);
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

struct Simplex {
  std::vector<std::vector<double>> pts;
  std::vector<double> vals;

  void order() {
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> p2;
    std::vector<double> v2;
    for (auto i : idx) {
      p2.push_back(std::move(pts[i]));
      v2.push_back(vals[i]);
    }
    pts = std::move(p2);
    vals = std::move(v2);
  }

  bool collapsed(double x_tol) const {
    const auto& best = pts.front();
    for (std::size_t j = 1; j < pts.size(); ++j)
      for (std::size_t i = 0; i < best.size(); ++i)
        if (std::abs(pts[j][i] - best[i]) > x_tol * (1.0 + std::abs(best[i]))) return false;
    return true;
  }
};

Simplex build(const Objective& f, const std::vector<double>& x0, std::span<const double> step) {
  Simplex s;
  s.pts.push_back(x0);
  for (std::size_t i = 0; i < x0.size(); ++i) {
    auto p = x0;
    p[i] += step[i];
    s.pts.push_back(std::move(p));
  }
  for (const auto& p : s.pts) s.vals.push_back(safe_eval(f, p));
  s.order();
  return s;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             std::span<const double> step, const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  if (n == 0 || step.size() != n) throw ArgumentError("nelder_mead: dimension mismatch");

  const double dn = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 1.0 / (2.0 * dn);
  const double shrink = 1.0 - 1.0 / dn;

  Simplex s = build(f, x0, step);
  std::size_t iters = 0;
  std::size_t restarts = 0;
  bool converged = false;
  std::vector<double> history;  // best value per iteration of the current leg
  double leg_start = s.vals.front();

  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  auto along = [&](std::vector<double>& out, double t) {
    for (std::size_t i = 0; i < n; ++i) out[i] = centroid[i] + t * (centroid[i] - s.pts[n][i]);
  };

  while (iters < opts.max_iters) {
    ++iters;
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += s.pts[j][i] / dn;

    along(xr, reflect);
    const double fr = safe_eval(f, xr);
    if (fr < s.vals[0]) {
      along(xe, reflect * expand);
      const double fe = safe_eval(f, xe);
      if (fe < fr) {
        s.pts[n] = xe;
        s.vals[n] = fe;
      } else {
        s.pts[n] = xr;
        s.vals[n] = fr;
      }
    } else if (fr < s.vals[n - 1]) {
      s.pts[n] = xr;
      s.vals[n] = fr;
    } else {
      const bool outside = fr < s.vals[n];
      along(xc, outside ? reflect * contract : -contract);
      const double fc = safe_eval(f, xc);
      if (fc < (outside ? fr : s.vals[n])) {
        s.pts[n] = xc;
        s.vals[n] = fc;
      } else {
        for (std::size_t j = 1; j <= n; ++j) {
          for (std::size_t i = 0; i < n; ++i)
            s.pts[j][i] = s.pts[0][i] + shrink * (s.pts[j][i] - s.pts[0][i]);
          s.vals[j] = safe_eval(f, s.pts[j]);
        }
      }
    }
    s.order();
    history.push_back(s.vals[0]);

    bool stalled = s.collapsed(opts.x_tol) || s.vals[0] == 0.0;
    if (!stalled && history.size() > opts.window) {
      const double before = history[history.size() - 1 - opts.window];
      const double now = history.back();
      const double scale = std::max(std::abs(before), std::numeric_limits<double>::min());
      stalled = (before - now) / scale < opts.tol;
    }
    if (!stalled) continue;

    // A restart that could not improve on its starting value means a true minimum.
    const double gain = leg_start - s.vals[0];
    const double scale = std::max(std::abs(leg_start), std::numeric_limits<double>::min());
    if ((restarts > 0 && gain / scale < opts.tol) || s.vals[0] == 0.0 ||
        restarts >= opts.max_restarts) {
      converged = true;
      break;
    }
    ++restarts;
    leg_start = s.vals[0];
    history.clear();
    s = build(f, s.pts[0], step);
  }

  return {s.pts[0], s.vals[0], iters, restarts, converged};
}

}  // namespace slk
