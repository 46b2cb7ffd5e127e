#include "slk/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "slk/nelder_mead.hpp"
#include "slk/parallel.hpp"

namespace slk {

namespace {

constexpr std::size_t kDim = 5;
using Theta = std::array<double, kDim>;

double huber(double r, double delta) {
  const double a = std::abs(r);
  return a <= delta ? 0.5 * r * r : delta * (a - 0.5 * delta);
}

// Pre-logged observations shared by every objective evaluation.
struct Problem {
  std::vector<double> log_n, log_d, target, weight;
  double min_loss = std::numeric_limits<double>::infinity();
  bool log_target = true;
  double delta = 1e-3;
  FitBounds bounds;

  Problem(std::span<const ExperimentRecord> records, const FitConfig& cfg)
      : log_target(cfg.log_target), delta(cfg.huber_delta), bounds(cfg.bounds) {
    for (const auto& r : records) {
      log_n.push_back(std::log(r.n_params()));
      log_d.push_back(std::log(r.d_tokens()));
      target.push_back(log_target ? std::log(r.val_loss()) : r.val_loss());
      weight.push_back(r.weight());
      min_loss = std::min(min_loss, r.val_loss());
    }
  }

  Theta clamp(std::span<const double> x) const {
    auto c = [](double v, Bounds b, bool logged) {
      const double lo = logged ? std::log(b.lo) : b.lo;
      const double hi = logged ? std::log(b.hi) : b.hi;
      return std::clamp(v, lo, hi);
    };
    return {c(x[0], bounds.a, true), c(x[1], bounds.b, true), c(x[2], bounds.alpha_n, false),
            c(x[3], bounds.alpha_d, false), c(x[4], bounds.l_inf, true)};
  }

  double predict(const Theta& t, std::size_t i) const {
    const double m = std::exp(t[0] - t[2] * log_n[i]) + std::exp(t[1] - t[3] * log_d[i]) +
                     std::exp(t[4]);
    return log_target ? std::log(m) : m;
  }

  double objective(std::span<const double> x) const {
    const Theta t = clamp(x);
    double sum = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
      if (weight[i] == 0.0) continue;
      sum += weight[i] * huber(predict(t, i) - target[i], delta);
    }
    return std::isfinite(sum) ? sum : std::numeric_limits<double>::infinity();
  }

  std::vector<double> residuals(const Theta& t) const {
    std::vector<double> r(target.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = predict(t, i) - target[i];
    return r;
  }
};

Theta to_theta(const PowerLawParams& p, const FitBounds& b) {
  return {std::log(std::max(p.A(), b.a.lo)), std::log(std::max(p.B(), b.b.lo)), p.alpha_n(),
          p.alpha_d(), std::log(std::max(p.l_inf(), b.l_inf.lo))};
}

PowerLawParams from_theta(const Theta& t) {
  return {std::exp(t[0]), std::exp(t[1]), t[2], t[3], std::exp(t[4])};
}

// With exponents and L_inf fixed the law is linear in (A, B): weighted least
// squares on L - L_inf, falling back to one term when the pair goes negative.
// Relative weighting (1/L^2) mirrors log-space residuals.
PowerLawParams solve_seed(std::span<const ExperimentRecord> records, const FitSeed& seed,
                          double min_loss, const FitBounds& bounds, bool relative) {
  const double l_inf = std::max(seed.l_inf_fraction * min_loss, 0.0);
  double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0;
  for (const auto& r : records) {
    const double w = relative ? r.weight() / (r.val_loss() * r.val_loss()) : r.weight();
    const double x1 = std::pow(r.n_params(), -seed.alpha_n);
    const double x2 = std::pow(r.d_tokens(), -seed.alpha_d);
    const double y = r.val_loss() - l_inf;
    s11 += w * x1 * x1;
    s12 += w * x1 * x2;
    s22 += w * x2 * x2;
    s1y += w * x1 * y;
    s2y += w * x2 * y;
  }
  double a = 0.0, b = 0.0;
  const double det = s11 * s22 - s12 * s12;
  if (det > 1e-12 * s11 * s22) {
    a = (s22 * s1y - s12 * s2y) / det;
    b = (s11 * s2y - s12 * s1y) / det;
  }
  if (!(a > 0.0 && b > 0.0)) {
    const double a_only = s11 > 0 ? s1y / s11 : 0.0;
    const double b_only = s22 > 0 ? s2y / s22 : 0.0;
    const double err_a = -a_only * s1y;  // residual SS up to a common constant
    const double err_b = -b_only * s2y;
    if (err_a <= err_b) {
      a = a_only;
      b = 0.0;
    } else {
      a = 0.0;
      b = b_only;
    }
  }
  auto fix = [](double v, Bounds bd) {
    return std::isfinite(v) ? std::clamp(v, bd.lo, bd.hi) : bd.lo;
  };
  return {fix(a, bounds.a), fix(b, bounds.b), std::clamp(seed.alpha_n, 0.0, kMaxExponent),
          std::clamp(seed.alpha_d, 0.0, kMaxExponent), l_inf};
}

void check_records(std::span<const ExperimentRecord> records) {
  if (records.size() < kDim + 1)
    throw IllPosedError("need at least " + std::to_string(kDim + 1) + " records, got " +
                        std::to_string(records.size()));
  std::set<double> ns, ds;
  double total_weight = 0.0;
  for (const auto& r : records) {
    if (r.tag() != records.front().tag())
      throw ArgumentError("records mix tags '" + records.front().tag().key() + "' and '" +
                          r.tag().key() + "'");
    ns.insert(r.n_params());
    ds.insert(r.d_tokens());
    total_weight += r.weight();
  }
  if (ns.size() < 2) throw IllPosedError("all records share one n_params value");
  if (ds.size() < 2) throw IllPosedError("all records share one d_tokens value");
  if (!(total_weight > 0)) throw IllPosedError("total record weight is zero");
}

struct SeedOutcome {
  Theta theta{};
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
};

}  // namespace

void FitConfig::validate() const {
  if (!(huber_delta > 0)) throw ArgumentError("huber_delta must be positive");
  if (max_iters == 0) throw ArgumentError("max_iters must be positive");
  if (!(tol > 0)) throw ArgumentError("tol must be positive");
  if (init_grid.empty()) throw ArgumentError("init_grid must be non-empty");
  for (const Bounds& b : {bounds.a, bounds.b, bounds.alpha_n, bounds.alpha_d, bounds.l_inf})
    if (!(b.lo < b.hi)) throw ArgumentError("every bound needs lo < hi");
  if (!(bounds.a.lo > 0 && bounds.b.lo > 0 && bounds.l_inf.lo > 0))
    throw ArgumentError("A, B and L_inf lower bounds must be positive (log parameterization)");
}

std::vector<FitSeed> make_init_grid(std::span<const double> alphas,
                                    std::span<const double> l_inf_fractions) {
  std::vector<FitSeed> grid;
  for (double an : alphas)
    for (double ad : alphas)
      for (double f : l_inf_fractions) {
        if (grid.size() == kMaxSeeds) return grid;
        grid.push_back({an, ad, f});
      }
  return grid;
}

FitConfig chinchilla_preset() {
  FitConfig cfg;
  const std::array<double, 5> alphas{0.1, 0.3, 0.5, 1.0, 3.0};
  const std::array<double, 3> fractions{0.0, 0.5, 0.9};
  cfg.init_grid = make_init_grid(alphas, fractions);
  cfg.preset = "chinchilla";
  return cfg;
}

FitConfig translation_preset() {
  FitConfig cfg;
  const std::array<double, 5> alphas{0.1, 0.3, 1.0, 3.0, 6.0};
  const std::array<double, 3> fractions{0.0, 0.5, 0.9};
  cfg.init_grid = make_init_grid(alphas, fractions);
  cfg.preset = "translation";
  return cfg;
}

FitConfig preset_by_name(const std::string& name) {
  if (name == "chinchilla") return chinchilla_preset();
  if (name == "translation") return translation_preset();
  throw LookupError("unknown preset '" + name + "' (available: chinchilla, translation)");
}

double fit_objective(std::span<const ExperimentRecord> records, const FitConfig& cfg,
                     const PowerLawParams& params) {
  Problem prob(records, cfg);
  const Theta t = to_theta(params, cfg.bounds);
  return prob.objective(t);
}

std::vector<PowerLawParams> seed_parameters(std::span<const ExperimentRecord> records,
                                            const FitConfig& cfg) {
  double min_loss = std::numeric_limits<double>::infinity();
  for (const auto& r : records) min_loss = std::min(min_loss, r.val_loss());
  std::vector<PowerLawParams> out;
  for (const auto& s : cfg.init_grid) out.push_back(solve_seed(records, s, min_loss, cfg.bounds, cfg.log_target));
  return out;
}

namespace {

// A term whose exponent sits at 0 is a constant; it belongs to L_inf.
PowerLawParams canonical(const PowerLawParams& p) {
  double a = p.A(), b = p.B(), l = p.l_inf();
  if (p.alpha_n() == 0.0) {
    l += a;
    a = 0.0;
  }
  if (p.alpha_d() == 0.0) {
    l += b;
    b = 0.0;
  }
  return PowerLawParams(a, b, p.alpha_n(), p.alpha_d(), l);
}

}  // namespace

FitResult fit_chinchilla(std::span<const ExperimentRecord> records, const FitConfig& cfg) {
  cfg.validate();
  check_records(records);
  const Problem prob(records, cfg);
  const auto seeds = seed_parameters(records, cfg);

  NelderMeadOptions nm;
  nm.max_iters = cfg.max_iters;
  nm.tol = cfg.tol;
  const Objective objective = [&prob](std::span<const double> x) { return prob.objective(x); };

  std::vector<SeedOutcome> outcomes(seeds.size());
  parallel_for(seeds.size(), cfg.threads, [&](std::size_t i) {
    const Theta start = prob.clamp(to_theta(seeds[i], cfg.bounds));
    const std::array<double, kDim> step{1.0, 1.0, std::max(0.05, 0.25 * start[2]),
                                        std::max(0.05, 0.25 * start[3]), 0.5};
    auto res = nelder_mead(objective, {start.begin(), start.end()}, step, nm);
    SeedOutcome out;
    out.theta = prob.clamp(res.x);
    out.value = prob.objective(out.theta);
    out.converged = res.converged;
    // Never report worse than the seed itself.
    const double start_value = prob.objective(start);
    if (!(out.value <= start_value)) {
      out.theta = start;
      out.value = start_value;
    }
    outcomes[i] = out;
  });

  std::size_t best = 0;
  std::optional<std::size_t> best_converged;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].value < outcomes[best].value) best = i;
    if (outcomes[i].converged &&
        (!best_converged || outcomes[i].value < outcomes[*best_converged].value))
      best_converged = i;
  }

  const auto& win = outcomes[best];
  if (!std::isfinite(win.value)) throw ConvergenceError("objective is non-finite at every seed", {});
  FitResult result(canonical(from_theta(win.theta)), win.value, prob.residuals(win.theta), best,
                   win.converged, cfg.log_target);
  if (!best_converged)
    throw ConvergenceError("optimizer did not converge from any of " +
                               std::to_string(seeds.size()) + " seeds",
                           result);
  return result;
}

FitResult fit_two_term(std::span<const ExperimentRecord> records, const FitConfig& cfg) {
  return fit_chinchilla(records, cfg);
}

std::vector<RankGroup> rank_by_irreducible_loss(const std::map<std::string, FitResult>& fits,
                                                double tie_tolerance) {
  std::vector<RankEntry> entries;
  for (const auto& [tag, fit] : fits) {
    if (!fit.converged) throw ArgumentError("fit for '" + tag + "' did not converge");
    entries.push_back({tag, fit.params.l_inf()});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.l_inf < b.l_inf; });
  std::vector<RankGroup> groups;
  for (const auto& e : entries) {
    if (!groups.empty() && e.l_inf - groups.back().back().l_inf < tie_tolerance)
      groups.back().push_back(e);
    else
      groups.push_back({e});
  }
  return groups;
}

GoodnessOfFit goodness_of_fit(const FitResult& result, std::span<const ExperimentRecord> records) {
  if (records.size() != result.n_points)
    throw ArgumentError("fit has " + std::to_string(result.n_points) + " points but " +
                        std::to_string(records.size()) + " records were given");
  if (records.size() < 2) throw ArgumentError("goodness of fit needs at least two records");
  std::vector<double> obs, pred;
  for (const auto& r : records) {
    const double m = evaluate_power_law(result.params, r.n_params(), r.d_tokens());
    obs.push_back(result.log_target ? std::log(r.val_loss()) : r.val_loss());
    pred.push_back(result.log_target ? std::log(m) : m);
  }
  const double mean = std::accumulate(obs.begin(), obs.end(), 0.0) / static_cast<double>(obs.size());
  double ss_res = 0.0, ss_tot = 0.0, max_abs = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double r = pred[i] - obs[i];
    ss_res += r * r;
    ss_tot += (obs[i] - mean) * (obs[i] - mean);
    max_abs = std::max(max_abs, std::abs(r));
  }
  double r2;
  if (ss_tot > 0)
    r2 = 1.0 - ss_res / ss_tot;
  else
    r2 = ss_res == 0.0 ? 1.0 : 0.0;
  return {std::sqrt(ss_res / static_cast<double>(obs.size())), r2, max_abs};
}

}  // namespace slk
