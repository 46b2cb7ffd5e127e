#pragma once

// Proportion-dependent multilingual law
//
//   L(N, D; p) = A * N^-alpha_N(p) + B * D_x^-alpha_D(p) + L_inf(p)
//   alpha_N(p) = sum_k p_k alpha_N^k     (likewise alpha_D, L_inf)
//   D_x        = D_all * (1 + gamma * sum_{i != j} p_i p_j tau_ij)
//
// The transfer sum runs over ordered pairs, so a directional tau counts both ways.

#include <span>
#include <vector>

#include "slk/core.hpp"

namespace slk {

struct MixtureExponents {
  double alpha_n;
  double alpha_d;
  double l_inf;
};

/// Throws DomainError when the transfer multiplier is not positive.
double effective_tokens(double d_all, const MixtureSpec& spec);
MixtureExponents mixture_exponents(const MixtureSpec& spec);
double evaluate_mixture_loss(double n, double d_all, const MixtureSpec& spec, double a, double b);

/// Ambient gradient dL/dp_k (not projected onto the simplex).
std::vector<double> mixture_loss_gradient(double n, double d_all, const MixtureSpec& spec,
                                          double a, double b);

/// Removes the component along (1, ..., 1).
std::vector<double> project_to_tangent(std::span<const double> g);

/// Evaluates the law for many proportion vectors at a fixed budget without
/// building a MixtureSpec per call; p is not re-validated here.
class MixtureEvaluator {
 public:
  MixtureEvaluator(MixtureTemplate model, double n, double d_all);

  double loss(std::span<const double> p) const;
  PowerLawTerms terms(std::span<const double> p) const;
  void gradient(std::span<const double> p, std::span<double> out) const;
  double transfer_multiplier(std::span<const double> p) const;
  MixtureExponents exponents(std::span<const double> p) const;

  const MixtureTemplate& model() const { return model_; }
  double n() const { return n_; }
  double d_all() const { return d_all_; }

 private:
  MixtureTemplate model_;
  double n_;
  double d_all_;
};

/// Observation of a mixture run, used to estimate the shared constants.
struct MixtureObservation {
  double n;
  double d_all;
  std::vector<double> proportions;
  double loss;
};

struct MixtureGlobals {
  double a;
  double b;
  double gamma;
  double objective;
};

/// Least squares on log loss over (log A, log B[, log gamma]); per-language
/// parameters and tau come from `model` and stay fixed. With fit_gamma false
/// the template's gamma is kept.
MixtureGlobals fit_mixture_globals(const std::vector<MixtureObservation>& observations,
                                   const MixtureTemplate& model, bool fit_gamma);

}  // namespace slk
