#include "slk/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "slk/error.hpp"

namespace slk {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

// log-space A * x^-alpha; zero coefficient gives an exact zero term.
double power_term(double coeff, double alpha, double x) {
  if (coeff == 0.0) return 0.0;
  return std::exp(std::log(coeff) - alpha * std::log(x));
}

void check_square(const Matrix& m, std::size_t k, const char* name) {
  require(m.size() == k, std::string(name) + " must have " + std::to_string(k) + " rows");
  for (const auto& row : m) {
    require(row.size() == k, std::string(name) + " must be square");
    for (double v : row) require(std::isfinite(v), std::string(name) + " has a non-finite cell");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::string normalize_language_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (out == "c#" || out == "cs" || out == "c-sharp") return "csharp";
  if (out == "js") return "javascript";
  if (out == "ts") return "typescript";
  if (out == "py") return "python";
  if (out == "golang") return "go";
  return out;
}

LanguageRegistry::LanguageRegistry(std::vector<std::string> languages) {
  for (auto& l : languages) add(l);
}

LanguageRegistry LanguageRegistry::paper_default() {
  return LanguageRegistry({"python", "java", "javascript", "typescript", "csharp", "go", "rust"});
}

std::string LanguageRegistry::add(std::string_view name) {
  std::string id = normalize_language_name(name);
  if (id.empty()) throw ValidationError("empty language identifier");
  if (id.find('_') != std::string::npos)
    throw ValidationError("language identifier '" + id + "' may not contain '_'");
  if (!contains(id)) languages_.push_back(id);
  return id;
}

std::optional<std::size_t> LanguageRegistry::find(std::string_view name) const {
  const std::string id = normalize_language_name(name);
  auto it = std::find(languages_.begin(), languages_.end(), id);
  if (it == languages_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - languages_.begin());
}

std::string LanguageRegistry::canonical(std::string_view name) const {
  return languages_[index_of(name)];
}

std::size_t LanguageRegistry::index_of(std::string_view name) const {
  if (auto idx = find(name)) return *idx;
  std::string known;
  for (const auto& l : languages_) known += (known.empty() ? "" : ", ") + l;
  throw LookupError("unknown language '" + std::string(name) + "' (registry: " + known + ")");
}

// ---------------------------------------------------------------------------

Tag Tag::language(std::string name) {
  if (name.empty()) throw ValidationError("empty language tag");
  return Tag(std::move(name), {});
}

Tag Tag::direction(std::string source, std::string target) {
  if (source.empty() || target.empty()) throw ValidationError("direction needs source and target");
  if (source == target)
    throw ValidationError("direction source and target are both '" + source + "'");
  return Tag(std::move(source), std::move(target));
}

Tag Tag::parse(std::string_view key) {
  const auto sep = key.find('_');
  if (sep == std::string_view::npos) return language(std::string(key));
  return direction(std::string(key.substr(0, sep)), std::string(key.substr(sep + 1)));
}

std::string Tag::key() const { return is_direction() ? source_ + "_" + target_ : source_; }

// ---------------------------------------------------------------------------

ExperimentRecord::ExperimentRecord(std::string run_id, Tag tag, double n_params,
                                   double d_tokens, double val_loss, double weight)
    : run_id_(std::move(run_id)),
      tag_(std::move(tag)),
      n_params_(n_params),
      d_tokens_(d_tokens),
      val_loss_(val_loss),
      weight_(weight) {
  require(!run_id_.empty(), "run_id must be non-empty");
  require(std::isfinite(n_params) && n_params > 0, "n_params must be positive");
  require(std::isfinite(d_tokens) && d_tokens > 0, "d_tokens must be positive");
  require(std::isfinite(val_loss) && val_loss > 0, "val_loss must be positive");
  require(finite_nonneg(weight), "weight must be non-negative");
}

ExperimentRecord ExperimentRecord::with_loss(double val_loss) const {
  return {run_id_, tag_, n_params_, d_tokens_, val_loss, weight_};
}

// ---------------------------------------------------------------------------

PowerLawParams::PowerLawParams(double a, double b, double alpha_n, double alpha_d,
                               double l_inf)
    : a_(a), b_(b), alpha_n_(alpha_n), alpha_d_(alpha_d), l_inf_(l_inf) {
  require(finite_nonneg(a), "A must be finite and non-negative");
  require(finite_nonneg(b), "B must be finite and non-negative");
  require(finite_nonneg(l_inf), "L_inf must be finite and non-negative");
  require(finite_nonneg(alpha_n) && alpha_n <= kMaxExponent, "alpha_N must lie in [0, 10]");
  require(finite_nonneg(alpha_d) && alpha_d <= kMaxExponent, "alpha_D must lie in [0, 10]");
}

PowerLawTerms power_law_terms(const PowerLawParams& p, double n, double d) {
  if (!(n > 0) || !(d > 0) || !std::isfinite(n) || !std::isfinite(d))
    throw DomainError("power law needs finite positive n and d");
  PowerLawTerms t{power_term(p.A(), p.alpha_n(), n), power_term(p.B(), p.alpha_d(), d),
                  p.l_inf()};
  if (!std::isfinite(t.param_term)) throw DomainError("parameter term A*N^-alpha_N overflowed");
  if (!std::isfinite(t.data_term)) throw DomainError("data term B*D^-alpha_D overflowed");
  if (!std::isfinite(t.total())) throw DomainError("power law sum overflowed");
  return t;
}

double evaluate_power_law(const PowerLawParams& params, double n, double d) {
  return power_law_terms(params, n, d).total();
}

PowerLawGradient power_law_gradient(const PowerLawParams& p, double n, double d) {
  const auto t = power_law_terms(p, n, d);
  return {-p.alpha_n() * t.param_term / n, -p.alpha_d() * t.data_term / d};
}

CriticalForm convert_to_critical_form(const PowerLawParams& p) {
  if (p.alpha_n() == 0.0 || p.alpha_d() == 0.0)
    throw UnrepresentableError("critical form needs non-zero alpha_N and alpha_D");
  return {std::pow(p.A(), 1.0 / p.alpha_n()), std::pow(p.B(), 1.0 / p.alpha_d()), p.alpha_n(),
          p.alpha_d(), p.l_inf()};
}

PowerLawParams from_critical_form(const CriticalForm& f) {
  return {std::pow(f.n_c, f.alpha_n), std::pow(f.d_c, f.alpha_d), f.alpha_n, f.alpha_d, f.l_inf};
}

// ---------------------------------------------------------------------------

FitResult::FitResult(PowerLawParams params_, double objective, std::vector<double> residuals_,
                     std::size_t init_index_, bool converged_, bool log_target_)
    : params(params_),
      objective_value(objective),
      n_points(residuals_.size()),
      residuals(std::move(residuals_)),
      init_index(init_index_),
      converged(converged_),
      log_target(log_target_) {
  require(finite_nonneg(objective), "objective must be finite and non-negative");
}

// ---------------------------------------------------------------------------

Matrix zero_matrix(std::size_t k) { return Matrix(k, std::vector<double>(k, 0.0)); }

SynergyMatrix::SynergyMatrix(std::vector<std::string> languages, std::vector<double> baseline,
                             OptionalMatrix delta, OptionalMatrix relative, Matrix tau)
    : languages_(std::move(languages)),
      baseline_(std::move(baseline)),
      delta_(std::move(delta)),
      relative_(std::move(relative)),
      tau_(std::move(tau)) {
  const std::size_t k = languages_.size();
  require(baseline_.size() == k, "baseline vector size mismatch");
  require(delta_.size() == k && relative_.size() == k, "synergy matrix row count mismatch");
  check_square(tau_, k, "tau");
  for (std::size_t i = 0; i < k; ++i) {
    require(delta_[i].size() == k && relative_[i].size() == k, "synergy matrix must be square");
    require(tau_[i][i] == 0.0, "tau diagonal must be zero");
    require(!delta_[i][i] || *delta_[i][i] == 0.0, "delta diagonal must be zero");
    for (std::size_t j = 0; j < k; ++j) {
      require(delta_[i][j].has_value() == relative_[i][j].has_value(),
              "delta and relative must share absent cells");
      if (delta_[i][j] && baseline_[i] > 0) {
        const double expect = *delta_[i][j] / baseline_[i];
        require(std::abs(*relative_[i][j] - expect) <= 1e-12 * std::max(1.0, std::abs(expect)),
                "relative must equal delta / baseline");
      }
    }
  }
}

std::size_t SynergyMatrix::index_of(std::string_view language) const {
  auto it = std::find(languages_.begin(), languages_.end(), normalize_language_name(language));
  if (it == languages_.end())
    throw LookupError("language '" + std::string(language) + "' not in synergy matrix");
  return static_cast<std::size_t>(it - languages_.begin());
}

SynergyMatrix SynergyMatrix::with_tau(Matrix tau) const {
  return {languages_, baseline_, delta_, relative_, std::move(tau)};
}

// ---------------------------------------------------------------------------

MixtureTemplate::MixtureTemplate(std::vector<std::string> languages,
                                 std::vector<PowerLawParams> params, Matrix tau, double gamma,
                                 double a, double b)
    : languages_(std::move(languages)),
      params_(std::move(params)),
      tau_(std::move(tau)),
      gamma_(gamma),
      a_(a),
      b_(b) {
  const std::size_t k = languages_.size();
  require(k >= 1, "mixture needs at least one language");
  require(params_.size() == k, "one parameter set per language required");
  check_square(tau_, k, "tau");
  require(finite_nonneg(gamma), "gamma must be finite and non-negative");
  require(finite_nonneg(a) && finite_nonneg(b), "A and B must be finite and non-negative");
}

std::size_t MixtureTemplate::index_of(std::string_view language) const {
  auto it = std::find(languages_.begin(), languages_.end(), normalize_language_name(language));
  if (it == languages_.end())
    throw LookupError("language '" + std::string(language) + "' not in mixture");
  return static_cast<std::size_t>(it - languages_.begin());
}

MixtureTemplate MixtureTemplate::with_gamma(double gamma) const {
  return {languages_, params_, tau_, gamma, a_, b_};
}

MixtureTemplate MixtureTemplate::with_tau(Matrix tau) const {
  return {languages_, params_, std::move(tau), gamma_, a_, b_};
}

void check_simplex(std::span<const double> p, double tolerance) {
  if (p.empty()) throw ValidationError("proportion vector is empty");
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) throw ValidationError("proportions must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > tolerance)
    throw ValidationError("proportions sum to " + std::to_string(sum) + ", expected 1");
}

MixtureSpec::MixtureSpec(std::vector<double> proportions, double gamma,
                         std::vector<PowerLawParams> params, Matrix tau)
    : proportions_(std::move(proportions)),
      gamma_(gamma),
      params_(std::move(params)),
      tau_(std::move(tau)) {
  check_simplex(proportions_);
  const std::size_t k = proportions_.size();
  require(params_.size() == k, "one parameter set per language required");
  check_square(tau_, k, "tau");
  require(finite_nonneg(gamma), "gamma must be finite and non-negative");
}

MixtureSpec::MixtureSpec(const MixtureTemplate& t, std::vector<double> proportions)
    : MixtureSpec(std::move(proportions), t.gamma(), t.params(), t.tau()) {}

// ---------------------------------------------------------------------------

AllocationPlan::AllocationPlan(MixtureTemplate model_, std::vector<double> proportions_,
                               std::vector<double> token_counts_, double predicted,
                               double uniform, double n, double d)
    : model(std::move(model_)),
      proportions(std::move(proportions_)),
      token_counts(std::move(token_counts_)),
      predicted_loss(predicted),
      uniform_loss(uniform),
      improvement(uniform - predicted),
      n_params(n),
      d_total(d) {
  check_simplex(proportions);
  require(proportions.size() == model.size() && token_counts.size() == model.size(),
          "plan vectors must match the mixture size");
  require(std::isfinite(predicted) && predicted > 0, "predicted loss must be positive");
  require(std::isfinite(uniform) && uniform > 0, "uniform loss must be positive");
  require(n > 0 && d > 0, "budget must be positive");
  const double total = std::accumulate(token_counts.begin(), token_counts.end(), 0.0);
  require(std::abs(total - d) <= 1e-9 * d, "token counts must sum to the token budget");
}

}  // namespace slk
