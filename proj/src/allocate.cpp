#include "slk/allocate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "slk/error.hpp"
#include "slk/parallel.hpp"
#include "slk/rng.hpp"

namespace slk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Box {
  std::vector<double> lo, hi;
};

Box resolve_box(std::size_t k, const AllocationConstraints& c) {
  Box b{c.floor.empty() ? std::vector<double>(k, kDefaultFloor) : c.floor,
        c.ceil.empty() ? std::vector<double>(k, 1.0) : c.ceil};
  return b;
}

double safe_loss(const MixtureEvaluator& eval, std::span<const double> p) {
  try {
    return eval.loss(p);
  } catch (const DomainError&) {
    return kInf;
  }
}

struct Descent {
  std::vector<double> p;
  double value = kInf;
};

Descent projected_descent(const MixtureEvaluator& eval, std::vector<double> p, const Box& box,
                          const AllocationOptions& opts) {
  const std::size_t k = p.size();
  double f = safe_loss(eval, p);
  if (!std::isfinite(f)) return {std::move(p), kInf};

  std::vector<double> g(k), trial(k), cand(k);
  double step = 0.0;
  for (std::size_t it = 0; it < opts.max_iters; ++it) {
    eval.gradient(p, g);
    if (step == 0.0) {
      double gmax = 0.0;
      for (double v : project_to_tangent(g)) gmax = std::max(gmax, std::abs(v));
      if (gmax == 0.0) break;
      step = 0.1 / gmax;
    } else {
      step *= 2.0;
    }

    bool accepted = false;
    double moved = 0.0;
    for (int bt = 0; bt < 80 && !accepted; ++bt, step *= 0.5) {
      for (std::size_t i = 0; i < k; ++i) trial[i] = p[i] - step * g[i];
      cand = project_to_box_simplex(trial, box.lo, box.hi);
      double decrease = 0.0;
      moved = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        decrease += g[i] * (cand[i] - p[i]);
        moved = std::max(moved, std::abs(cand[i] - p[i]));
      }
      if (moved <= 1e-15) break;  // projected stationary point
      const double fc = safe_loss(eval, cand);
      if (fc <= f + opts.armijo_c * decrease && fc <= f) {
        p = cand;
        f = fc;
        accepted = true;
        step *= 2.0;  // undo the loop's halving
      }
    }
    if (accepted && moved <= 1e-13) break;
    if (!accepted) break;
  }
  return {std::move(p), f};
}

}  // namespace

AllocationConstraints AllocationConstraints::uniform_box(std::size_t k, double floor,
                                                         double ceil) {
  return {std::vector<double>(k, floor), std::vector<double>(k, ceil)};
}

void check_constraints(std::size_t k, const AllocationConstraints& c) {
  const Box b = resolve_box(k, c);
  if (b.lo.size() != k || b.hi.size() != k)
    throw ConstraintError("floor/ceil vectors must have one entry per language");
  double sum_lo = 0.0, sum_hi = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(b.lo[i] >= 0.0))
      throw ConstraintError("floor[" + std::to_string(i) + "] = " + std::to_string(b.lo[i]) +
                            " is negative");
    if (!(b.hi[i] <= 1.0))
      throw ConstraintError("ceil[" + std::to_string(i) + "] = " + std::to_string(b.hi[i]) +
                            " exceeds 1");
    if (b.lo[i] > b.hi[i])
      throw ConstraintError("floor[" + std::to_string(i) + "] exceeds ceil[" + std::to_string(i) +
                            "]");
    sum_lo += b.lo[i];
    sum_hi += b.hi[i];
  }
  if (sum_lo > 1.0 + 1e-12)
    throw ConstraintError("floors sum to " + std::to_string(sum_lo) + " > 1");
  if (sum_hi < 1.0 - 1e-12)
    throw ConstraintError("ceilings sum to " + std::to_string(sum_hi) + " < 1");
}

std::vector<double> project_to_box_simplex(std::span<const double> v, std::span<const double> lo,
                                           std::span<const double> hi) {
  const std::size_t k = v.size();
  auto total = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += std::clamp(v[i] - lambda, lo[i], hi[i]);
    return s;
  };
  std::vector<double> breaks;
  breaks.reserve(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    breaks.push_back(v[i] - hi[i]);
    breaks.push_back(v[i] - lo[i]);
  }
  std::sort(breaks.begin(), breaks.end());

  // total() is non-increasing and linear between consecutive breakpoints.
  double lambda = breaks.back();
  double prev_l = breaks.front();
  double prev_s = total(prev_l);
  if (prev_s <= 1.0) {
    lambda = prev_l;
  } else {
    for (std::size_t i = 1; i < breaks.size(); ++i) {
      const double s = total(breaks[i]);
      if (s <= 1.0) {
        lambda = prev_s == s ? breaks[i]
                             : prev_l + (prev_s - 1.0) * (breaks[i] - prev_l) / (prev_s - s);
        break;
      }
      prev_l = breaks[i];
      prev_s = s;
    }
  }
  std::vector<double> p(k);
  for (std::size_t i = 0; i < k; ++i) p[i] = std::clamp(v[i] - lambda, lo[i], hi[i]);
  return p;
}

std::vector<double> tokens_from_proportions(std::span<const double> p, double d_total) {
  check_simplex(p);
  if (!(d_total > 0)) throw ArgumentError("token total must be positive");
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] * d_total;
  return out;
}

AllocationPlan optimize_proportions(double n, double d_all, const MixtureTemplate& model,
                                    const AllocationConstraints& constraints,
                                    const AllocationOptions& opts) {
  const std::size_t k = model.size();
  check_constraints(k, constraints);
  const Box box = resolve_box(k, constraints);
  const MixtureEvaluator eval(model, n, d_all);

  const std::vector<double> uniform(k, 1.0 / static_cast<double>(k));
  bool uniform_feasible = true;
  for (std::size_t i = 0; i < k; ++i)
    uniform_feasible = uniform_feasible && box.lo[i] <= uniform[i] && uniform[i] <= box.hi[i];

  std::vector<std::vector<double>> starts;
  starts.push_back(uniform_feasible ? uniform : project_to_box_simplex(uniform, box.lo, box.hi));
  for (std::size_t v = 0; v < k && starts.size() < opts.starts; ++v) {
    std::vector<double> e(k, 0.0);
    e[v] = 1.0;
    starts.push_back(project_to_box_simplex(e, box.lo, box.hi));
  }
  const Rng root(opts.seed);
  for (std::size_t s = starts.size(); s < std::max<std::size_t>(opts.starts, 1); ++s) {
    Rng child = root.split(s);
    starts.push_back(project_to_box_simplex(child.dirichlet_ones(k), box.lo, box.hi));
  }

  std::vector<Descent> results(starts.size());
  parallel_for(starts.size(), opts.threads, [&](std::size_t i) {
    results[i] = projected_descent(eval, starts[i], box, opts);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].value < results[best].value) best = i;
  if (!std::isfinite(results[best].value))
    throw DomainError("mixture loss is undefined at every start (check tau and gamma)");

  const double uniform_loss = eval.loss(uniform);
  auto p = results[best].p;
  auto tokens = tokens_from_proportions(p, d_all);
  return AllocationPlan(model, std::move(p), std::move(tokens), results[best].value, uniform_loss,
                        n, d_all);
}

ComputeSplit compute_optimal_split(const PowerLawParams& params, double compute_budget,
                                   double flops_per_param_token) {
  if (!(compute_budget > 0) || !(flops_per_param_token > 0))
    throw ArgumentError("compute budget and flops factor must be positive");
  const double an = params.alpha_n();
  const double ad = params.alpha_d();
  if (an == 0.0 || ad == 0.0)
    throw DegenerateFrontierError("compute-optimal split needs non-zero alpha_N and alpha_D");
  if (params.A() == 0.0 || params.B() == 0.0)
    throw DegenerateFrontierError("compute-optimal split needs non-zero A and B");
  const double log_nd = std::log(compute_budget / flops_per_param_token);
  const double log_n = (std::log(an * params.A()) - std::log(ad * params.B())) / (an + ad) +
                       ad / (an + ad) * log_nd;
  const double n = std::exp(log_n);
  const double d = std::exp(log_nd - log_n);
  return {n, d, evaluate_power_law(params, n, d)};
}

WhatIfReport whatif(std::span<const double> p, double n, double d_all,
                    const MixtureTemplate& model) {
  if (p.size() != model.size())
    throw ArgumentError("expected " + std::to_string(model.size()) + " proportions, got " +
                        std::to_string(p.size()));
  check_simplex(p);
  const MixtureEvaluator eval(model, n, d_all);
  const std::vector<double> uniform(p.size(), 1.0 / static_cast<double>(p.size()));
  WhatIfReport r;
  r.languages = model.languages();
  r.proportions.assign(p.begin(), p.end());
  r.token_counts = tokens_from_proportions(p, d_all);
  r.breakdown = eval.terms(p);
  r.predicted_loss = r.breakdown.total();
  r.effective_tokens = d_all * eval.transfer_multiplier(p);
  r.exponents = eval.exponents(p);
  r.uniform_loss = eval.loss(uniform);
  r.delta_vs_uniform = r.predicted_loss - r.uniform_loss;
  return r;
}

WhatIfReport whatif(const AllocationPlan& plan) {
  return whatif(plan.proportions, plan.n_params, plan.d_total, plan.model);
}

std::string render_plan_table(const AllocationPlan& plan) {
  const std::size_t k = plan.model.size();
  const double uniform_tokens = plan.d_total / static_cast<double>(k);
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %10s %16s %16s\n", "language", "proportion", "tokens",
                "delta_vs_uniform");
  out += buf;
  for (std::size_t i = 0; i < k; ++i) {
    std::snprintf(buf, sizeof buf, "%-12s %10.4f %16.6g %+16.6g\n",
                  plan.model.languages()[i].c_str(), plan.proportions[i], plan.token_counts[i],
                  plan.token_counts[i] - uniform_tokens);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "predicted loss %.6f | uniform %.6f | improvement %+.6g\n",
                plan.predicted_loss, plan.uniform_loss, plan.improvement);
  out += buf;
  return out;
}

}  // namespace slk
