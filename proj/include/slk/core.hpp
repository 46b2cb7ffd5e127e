#pragma once

// Domain types shared by every module, plus evaluation of the two-term
// power law  L(N, D) = A * N^-alpha_N + B * D^-alpha_D + L_inf.
//
// Every type validates its invariants on construction and is immutable
// afterwards, so instances can be shared freely between threads.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slk {

inline constexpr double kMaxExponent = 10.0;
inline constexpr double kSimplexTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Language registry and tags
// ---------------------------------------------------------------------------

/// Ordered set of language identifiers. Identifiers are lower-case and may
/// not contain '_' (reserved as the direction separator in tag keys).
class LanguageRegistry {
 public:
  LanguageRegistry() = default;
  explicit LanguageRegistry(std::vector<std::string> languages);

  /// Python, Java, JavaScript, TypeScript, C#, Go, Rust.
  static LanguageRegistry paper_default();

  /// Adds a language if not already present; returns its canonical id.
  std::string add(std::string_view name);

  /// Canonical id for a name or alias ("C#" -> "csharp", "Python" -> "python").
  /// Throws LookupError when unknown.
  std::string canonical(std::string_view name) const;
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  const std::vector<std::string>& languages() const { return languages_; }
  std::size_t size() const { return languages_.size(); }

  friend bool operator==(const LanguageRegistry&, const LanguageRegistry&) = default;

 private:
  std::vector<std::string> languages_;
};

/// Lower-cases and resolves well-known aliases; does not consult a registry.
std::string normalize_language_name(std::string_view name);

/// Either a single language or an ordered (source, target) direction.
class Tag {
 public:
  static Tag language(std::string name);
  static Tag direction(std::string source, std::string target);
  /// Parses "python" or "python_java".
  static Tag parse(std::string_view key);

  bool is_direction() const { return !target_.empty(); }
  const std::string& source() const { return source_; }
  const std::string& target() const { return target_; }
  /// "python" for a language, "python_java" for a direction.
  std::string key() const;

  friend auto operator<=>(const Tag&, const Tag&) = default;
  friend bool operator==(const Tag&, const Tag&) = default;

 private:
  Tag(std::string s, std::string t) : source_(std::move(s)), target_(std::move(t)) {}
  std::string source_;
  std::string target_;
};

// ---------------------------------------------------------------------------
// Observations
// ---------------------------------------------------------------------------

class ExperimentRecord {
 public:
  ExperimentRecord(std::string run_id, Tag tag, double n_params, double d_tokens,
                   double val_loss, double weight = 1.0);

  const std::string& run_id() const { return run_id_; }
  const Tag& tag() const { return tag_; }
  double n_params() const { return n_params_; }
  double d_tokens() const { return d_tokens_; }
  double val_loss() const { return val_loss_; }
  double weight() const { return weight_; }

  ExperimentRecord with_loss(double val_loss) const;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;

 private:
  std::string run_id_;
  Tag tag_;
  double n_params_;
  double d_tokens_;
  double val_loss_;
  double weight_;
};

// ---------------------------------------------------------------------------
// Power law
// ---------------------------------------------------------------------------

/// Five-tuple (A, B, alpha_N, alpha_D, L_inf). A is the same quantity as
/// N_c^alpha_N in the critical-scale form, B likewise D_c^alpha_D.
class PowerLawParams {
 public:
  PowerLawParams(double a, double b, double alpha_n, double alpha_d, double l_inf);

  double A() const { return a_; }
  double B() const { return b_; }
  double alpha_n() const { return alpha_n_; }
  double alpha_d() const { return alpha_d_; }
  double l_inf() const { return l_inf_; }

  friend bool operator==(const PowerLawParams&, const PowerLawParams&) = default;

 private:
  double a_, b_, alpha_n_, alpha_d_, l_inf_;
};

/// L(N, D) = (N_c / N)^alpha_N + (D_c / D)^alpha_D + L_inf.
struct CriticalForm {
  double n_c;
  double d_c;
  double alpha_n;
  double alpha_d;
  double l_inf;
};

struct PowerLawTerms {
  double param_term;
  double data_term;
  double irreducible;
  double total() const { return param_term + data_term + irreducible; }
};

struct PowerLawGradient {
  double d_dn;
  double d_dd;
};

/// A * n^-alpha_N + B * d^-alpha_D + L_inf, power terms computed in log space.
/// Throws DomainError naming the term that overflowed.
double evaluate_power_law(const PowerLawParams& params, double n, double d);
PowerLawTerms power_law_terms(const PowerLawParams& params, double n, double d);
PowerLawGradient power_law_gradient(const PowerLawParams& params, double n, double d);

/// Throws UnrepresentableError when either exponent is zero.
CriticalForm convert_to_critical_form(const PowerLawParams& params);
PowerLawParams from_critical_form(const CriticalForm& form);

// ---------------------------------------------------------------------------
// Fit output
// ---------------------------------------------------------------------------

struct FitResult {
  FitResult(PowerLawParams params, double objective_value, std::vector<double> residuals,
            std::size_t init_index, bool converged, bool log_target);

  PowerLawParams params;
  double objective_value;
  std::size_t n_points;
  std::vector<double> residuals;
  std::size_t init_index;
  bool converged;
  bool log_target;
};

// ---------------------------------------------------------------------------
// Synergy
// ---------------------------------------------------------------------------

using OptionalMatrix = std::vector<std::vector<std::optional<double>>>;
using Matrix = std::vector<std::vector<double>>;

Matrix zero_matrix(std::size_t k);

/// Directional synergy table. delta[i][j] is the loss improvement on target
/// language i from mixing in auxiliary language j (positive = helps). Cells
/// never observed stay empty.
class SynergyMatrix {
 public:
  SynergyMatrix(std::vector<std::string> languages, std::vector<double> baseline_loss,
                OptionalMatrix delta, OptionalMatrix relative, Matrix tau);

  const std::vector<std::string>& languages() const { return languages_; }
  const std::vector<double>& baseline_loss() const { return baseline_; }
  const OptionalMatrix& delta() const { return delta_; }
  const OptionalMatrix& relative() const { return relative_; }
  const Matrix& tau() const { return tau_; }
  std::size_t size() const { return languages_.size(); }
  std::size_t index_of(std::string_view language) const;

  SynergyMatrix with_tau(Matrix tau) const;

 private:
  std::vector<std::string> languages_;
  std::vector<double> baseline_;
  OptionalMatrix delta_;
  OptionalMatrix relative_;
  Matrix tau_;
};

// ---------------------------------------------------------------------------
// Mixtures and allocation
// ---------------------------------------------------------------------------

/// Everything in the proportion-dependent law except the proportions:
/// languages, per-language parameters, transfer matrix, transfer strength
/// gamma and the shared constants A and B.
class MixtureTemplate {
 public:
  MixtureTemplate(std::vector<std::string> languages, std::vector<PowerLawParams> params,
                  Matrix tau, double gamma, double a, double b);

  const std::vector<std::string>& languages() const { return languages_; }
  const std::vector<PowerLawParams>& params() const { return params_; }
  const Matrix& tau() const { return tau_; }
  double gamma() const { return gamma_; }
  double A() const { return a_; }
  double B() const { return b_; }
  std::size_t size() const { return languages_.size(); }
  std::size_t index_of(std::string_view language) const;

  MixtureTemplate with_gamma(double gamma) const;
  MixtureTemplate with_tau(Matrix tau) const;

 private:
  std::vector<std::string> languages_;
  std::vector<PowerLawParams> params_;
  Matrix tau_;
  double gamma_;
  double a_;
  double b_;
};

/// Proportions on the simplex together with the law they parameterize.
class MixtureSpec {
 public:
  MixtureSpec(std::vector<double> proportions, double gamma,
              std::vector<PowerLawParams> per_language_params, Matrix tau);
  MixtureSpec(const MixtureTemplate& tmpl, std::vector<double> proportions);

  const std::vector<double>& proportions() const { return proportions_; }
  double gamma() const { return gamma_; }
  const std::vector<PowerLawParams>& per_language_params() const { return params_; }
  const Matrix& tau() const { return tau_; }
  std::size_t size() const { return proportions_.size(); }

 private:
  std::vector<double> proportions_;
  double gamma_;
  std::vector<PowerLawParams> params_;
  Matrix tau_;
};

/// Throws ValidationError unless p is non-negative and sums to one.
void check_simplex(std::span<const double> p, double tolerance = kSimplexTolerance);

struct AllocationPlan {
  AllocationPlan(MixtureTemplate model, std::vector<double> proportions,
                 std::vector<double> token_counts, double predicted_loss, double uniform_loss,
                 double n_params, double d_total);

  MixtureTemplate model;
  std::vector<double> proportions;
  std::vector<double> token_counts;
  double predicted_loss;
  double uniform_loss;
  double improvement;
  double n_params;
  double d_total;
};

}  // namespace slk
