#include "slk/mixture.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "slk/error.hpp"
#include "slk/nelder_mead.hpp"

namespace slk {

namespace {

double transfer_sum(std::span<const double> p, const Matrix& tau) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (i != j) s += p[i] * p[j] * tau[i][j];
  return s;
}

double multiplier(std::span<const double> p, const Matrix& tau, double gamma) {
  const double m = 1.0 + gamma * transfer_sum(p, tau);
  if (!(m > 0) || !std::isfinite(m))
    throw DomainError("effective-data multiplier 1 + gamma*sum(p_i p_j tau_ij) is not positive");
  return m;
}

MixtureExponents weighted(std::span<const double> p, const std::vector<PowerLawParams>& params) {
  MixtureExponents e{0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < p.size(); ++k) {
    e.alpha_n += p[k] * params[k].alpha_n();
    e.alpha_d += p[k] * params[k].alpha_d();
    e.l_inf += p[k] * params[k].l_inf();
  }
  return e;
}

PowerLawTerms mixture_terms(std::span<const double> p, const std::vector<PowerLawParams>& params,
                            const Matrix& tau, double gamma, double n, double d_all, double a,
                            double b) {
  const auto e = weighted(p, params);
  const double dx = d_all * multiplier(p, tau, gamma);
  return power_law_terms(PowerLawParams(a, b, e.alpha_n, e.alpha_d, e.l_inf), n, dx);
}

void mixture_gradient(std::span<const double> p, const std::vector<PowerLawParams>& params,
                      const Matrix& tau, double gamma, double n, double d_all, double a, double b,
                      std::span<double> out) {
  const auto e = weighted(p, params);
  const double m = multiplier(p, tau, gamma);
  const double dx = d_all * m;
  const auto t = power_law_terms(PowerLawParams(a, b, e.alpha_n, e.alpha_d, e.l_inf), n, dx);
  const double log_n = std::log(n);
  const double log_dx = std::log(dx);
  for (std::size_t k = 0; k < p.size(); ++k) {
    double ds = 0.0;  // d(sum_{i!=j} p_i p_j tau_ij) / dp_k
    for (std::size_t j = 0; j < p.size(); ++j)
      if (j != k) ds += p[j] * (tau[k][j] + tau[j][k]);
    const double dlog_dx = gamma * ds / m;
    out[k] = -t.param_term * params[k].alpha_n() * log_n -
             t.data_term * (params[k].alpha_d() * log_dx + e.alpha_d * dlog_dx) +
             params[k].l_inf();
  }
}

}  // namespace

double effective_tokens(double d_all, const MixtureSpec& spec) {
  if (!(d_all > 0) || !std::isfinite(d_all)) throw DomainError("d_all must be positive");
  return d_all * multiplier(spec.proportions(), spec.tau(), spec.gamma());
}

MixtureExponents mixture_exponents(const MixtureSpec& spec) {
  return weighted(spec.proportions(), spec.per_language_params());
}

double evaluate_mixture_loss(double n, double d_all, const MixtureSpec& spec, double a, double b) {
  if (!(d_all > 0) || !std::isfinite(d_all)) throw DomainError("d_all must be positive");
  return mixture_terms(spec.proportions(), spec.per_language_params(), spec.tau(), spec.gamma(),
                       n, d_all, a, b)
      .total();
}

std::vector<double> mixture_loss_gradient(double n, double d_all, const MixtureSpec& spec,
                                          double a, double b) {
  std::vector<double> g(spec.size());
  mixture_gradient(spec.proportions(), spec.per_language_params(), spec.tau(), spec.gamma(), n,
                   d_all, a, b, g);
  return g;
}

std::vector<double> project_to_tangent(std::span<const double> g) {
  const double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
  std::vector<double> out(g.begin(), g.end());
  for (auto& v : out) v -= mean;
  return out;
}

// ---------------------------------------------------------------------------

MixtureEvaluator::MixtureEvaluator(MixtureTemplate model, double n, double d_all)
    : model_(std::move(model)), n_(n), d_all_(d_all) {
  if (!(n > 0) || !(d_all > 0) || !std::isfinite(n) || !std::isfinite(d_all))
    throw DomainError("budget (n, d_all) must be positive");
}

double MixtureEvaluator::loss(std::span<const double> p) const { return terms(p).total(); }

PowerLawTerms MixtureEvaluator::terms(std::span<const double> p) const {
  return mixture_terms(p, model_.params(), model_.tau(), model_.gamma(), n_, d_all_, model_.A(),
                       model_.B());
}

void MixtureEvaluator::gradient(std::span<const double> p, std::span<double> out) const {
  mixture_gradient(p, model_.params(), model_.tau(), model_.gamma(), n_, d_all_, model_.A(),
                   model_.B(), out);
}

double MixtureEvaluator::transfer_multiplier(std::span<const double> p) const {
  return multiplier(p, model_.tau(), model_.gamma());
}

MixtureExponents MixtureEvaluator::exponents(std::span<const double> p) const {
  return weighted(p, model_.params());
}

// ---------------------------------------------------------------------------

MixtureGlobals fit_mixture_globals(const std::vector<MixtureObservation>& obs,
                                   const MixtureTemplate& model, bool fit_gamma) {
  const std::size_t free = fit_gamma ? 3 : 2;
  if (obs.size() < free + 1)
    throw IllPosedError("need at least " + std::to_string(free + 1) + " mixture observations");
  for (const auto& o : obs) {
    if (o.proportions.size() != model.size())
      throw ArgumentError("observation proportions do not match the mixture languages");
    check_simplex(o.proportions);
    if (!(o.loss > 0) || !(o.n > 0) || !(o.d_all > 0))
      throw ValidationError("mixture observations need positive n, d_all and loss");
  }
  auto unpack = [&](std::span<const double> x) {
    const double gamma = fit_gamma ? std::exp(std::clamp(x[2], -30.0, 5.0)) : model.gamma();
    return std::array<double, 3>{std::exp(std::clamp(x[0], -30.0, 30.0)),
                                 std::exp(std::clamp(x[1], -30.0, 30.0)), gamma};
  };
  const Objective objective = [&](std::span<const double> x) {
    const auto [a, b, gamma] = unpack(x);
    double sum = 0.0;
    for (const auto& o : obs) {
      double pred;
      try {
        pred = mixture_terms(o.proportions, model.params(), model.tau(), gamma, o.n, o.d_all, a,
                             b)
                   .total();
      } catch (const DomainError&) {
        return std::numeric_limits<double>::infinity();
      }
      const double r = std::log(pred) - std::log(o.loss);
      sum += r * r;
    }
    return sum;
  };

  std::vector<double> best_x;
  double best = std::numeric_limits<double>::infinity();
  NelderMeadOptions nm;
  nm.max_iters = 4000;
  nm.tol = 1e-14;
  for (double la : {-2.0, 2.0, 6.0})
    for (double lb : {-2.0, 2.0, 6.0}) {
      std::vector<double> x0{la, lb};
      std::vector<double> step{1.0, 1.0};
      if (fit_gamma) {
        x0.push_back(std::log(std::max(model.gamma(), 1e-3)));
        step.push_back(0.5);
      }
      auto r = nelder_mead(objective, x0, step, nm);
      if (r.value < best) {
        best = r.value;
        best_x = r.x;
      }
    }
  const auto [a, b, gamma] = unpack(best_x);
  return {a, b, gamma, best};
}

}  // namespace slk
