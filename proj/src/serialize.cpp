#include "slk/serialize.hpp"

#include "slk/error.hpp"

namespace slk {

namespace {

template <class T>
T get(const Json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw SchemaError(std::string("field '") + key + "' has the wrong type");
  }
}

Json header(const std::string& kind) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& r : m) rows.push_back(r);
  return rows;
}

Json optional_matrix_to_json(const OptionalMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m) {
    Json row = Json::array();
    for (const auto& c : r) row.push_back(c ? Json(*c) : Json(nullptr));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, std::size_t k, const char* what) {
  if (!j.is_array() || j.size() != k)
    throw SchemaError(std::string(what) + " must be a " + std::to_string(k) + "x" +
                      std::to_string(k) + " array");
  Matrix m = zero_matrix(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!j[i].is_array() || j[i].size() != k)
      throw SchemaError(std::string(what) + " row " + std::to_string(i) + " has the wrong size");
    for (std::size_t c = 0; c < k; ++c) {
      if (!j[i][c].is_number())
        throw SchemaError(std::string(what) + "[" + std::to_string(i) + "][" + std::to_string(c) +
                          "] is not a number");
      m[i][c] = j[i][c].get<double>();
    }
  }
  return m;
}

OptionalMatrix optional_matrix_from_json(const Json& j, std::size_t k, const char* what) {
  if (!j.is_array() || j.size() != k) throw SchemaError(std::string(what) + " has the wrong size");
  OptionalMatrix m(k, std::vector<std::optional<double>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    if (!j[i].is_array() || j[i].size() != k)
      throw SchemaError(std::string(what) + " row " + std::to_string(i) + " has the wrong size");
    for (std::size_t c = 0; c < k; ++c)
      if (!j[i][c].is_null()) m[i][c] = j[i][c].get<double>();
  }
  return m;
}

Json bounds_to_json(const Bounds& b) { return Json::array({b.lo, b.hi}); }

std::optional<Bounds> bounds_from_json(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2) throw SchemaError(std::string(key) + " must be [lo, hi]");
  return Bounds{v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

Json parse_document(const std::string& text, const std::string& kind) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  const int version = get<int>(j, "schema_version");
  if (version != kSchemaVersion)
    throw SchemaError("unsupported schema_version " + std::to_string(version) + " (expected " +
                      std::to_string(kSchemaVersion) + ")");
  const auto found = get<std::string>(j, "kind");
  if (found != kind) throw SchemaError("expected a '" + kind + "' document, got '" + found + "'");
  return j;
}

Json params_to_json(const PowerLawParams& p) {
  Json j;
  j["A"] = p.A();
  j["B"] = p.B();
  j["alpha_n"] = p.alpha_n();
  j["alpha_d"] = p.alpha_d();
  j["l_inf"] = p.l_inf();
  return j;
}

PowerLawParams params_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("parameters must be an object");
  return PowerLawParams(get<double>(j, "A"), get<double>(j, "B"), get<double>(j, "alpha_n"),
                        get<double>(j, "alpha_d"), get<double>(j, "l_inf"));
}

Json config_to_json(const FitConfig& cfg) {
  Json j;
  j["preset"] = cfg.preset;
  j["huber_delta"] = cfg.huber_delta;
  j["max_iters"] = cfg.max_iters;
  j["tol"] = cfg.tol;
  j["log_target"] = cfg.log_target;
  Json grid = Json::array();
  for (const auto& s : cfg.init_grid)
    grid.push_back(Json::array({s.alpha_n, s.alpha_d, s.l_inf_fraction}));
  j["init_grid"] = grid;
  Json b;
  b["A"] = bounds_to_json(cfg.bounds.a);
  b["B"] = bounds_to_json(cfg.bounds.b);
  b["alpha_n"] = bounds_to_json(cfg.bounds.alpha_n);
  b["alpha_d"] = bounds_to_json(cfg.bounds.alpha_d);
  b["l_inf"] = bounds_to_json(cfg.bounds.l_inf);
  j["bounds"] = b;
  return j;
}

std::string write_fits_json(const FitsDocument& doc) {
  Json j = header("fits");
  j["group_by"] = doc.group_by;
  j["units"] = doc.units;
  Json src;
  src["path"] = doc.source_path;
  src["content_hash"] = doc.source_hash;
  j["source"] = src;
  j["config"] = doc.config;
  Json fits = Json::array();
  for (const auto& e : doc.fits) {
    Json f;
    f["tag"] = e.tag;
    f["params"] = params_to_json(e.result.params);
    Json d;
    d["objective"] = e.result.objective_value;
    d["n_points"] = e.result.n_points;
    d["init_index"] = e.result.init_index;
    d["converged"] = e.result.converged;
    d["log_target"] = e.result.log_target;
    d["residuals"] = e.result.residuals;
    if (e.gof) {
      d["rmse"] = e.gof->rmse;
      d["r_squared"] = e.gof->r_squared;
      d["max_abs_residual"] = e.gof->max_abs_residual;
    }
    f["diagnostics"] = d;
    f["n_range"] = e.n_range ? bounds_to_json(*e.n_range) : Json(nullptr);
    f["d_range"] = e.d_range ? bounds_to_json(*e.d_range) : Json(nullptr);
    fits.push_back(f);
  }
  j["fits"] = fits;
  return dump(j);
}

FitsDocument read_fits_json(const std::string& text) {
  const Json j = parse_document(text, "fits");
  FitsDocument doc;
  doc.group_by = get<std::string>(j, "group_by");
  doc.units = j.value("units", std::string("raw counts"));
  if (j.contains("source")) {
    doc.source_path = j["source"].value("path", std::string());
    doc.source_hash = j["source"].value("content_hash", std::string());
  }
  doc.config = j.value("config", Json::object());
  const auto& fits = j.at("fits");
  if (!fits.is_array()) throw SchemaError("'fits' must be an array");
  for (const auto& f : fits) {
    const auto tag = get<std::string>(f, "tag");
    const auto params = params_from_json(f.at("params"));
    const Json d = f.value("diagnostics", Json::object());
    FitResult r(params, d.value("objective", 0.0), d.value("residuals", std::vector<double>{}),
                d.value("init_index", std::size_t{0}), d.value("converged", true),
                d.value("log_target", true));
    std::optional<GoodnessOfFit> gof;
    if (d.contains("rmse"))
      gof = GoodnessOfFit{d["rmse"].get<double>(), d.value("r_squared", 0.0),
                          d.value("max_abs_residual", 0.0)};
    doc.fits.push_back({tag, r, gof, bounds_from_json(f, "n_range"), bounds_from_json(f, "d_range")});
  }
  return doc;
}

const FitEntry& find_fit(const FitsDocument& doc, const std::string& tag) {
  for (const auto& e : doc.fits)
    if (e.tag == tag) return e;
  std::string list;
  for (const auto& e : doc.fits) list += (list.empty() ? "" : ", ") + e.tag;
  throw LookupError("no fit for tag '" + tag + "' (available: " + list + ")");
}

std::string write_synergy_json(const SynergyMatrix& m, TauMode mode) {
  Json j = header("synergy");
  j["languages"] = m.languages();
  j["baseline_loss"] = m.baseline_loss();
  j["delta"] = optional_matrix_to_json(m.delta());
  j["relative"] = optional_matrix_to_json(m.relative());
  j["tau_mode"] = to_string(mode);
  j["tau"] = matrix_to_json(derive_transfer_coefficients(m, mode).tau);
  return dump(j);
}

SynergyMatrix read_synergy_json(const std::string& text) {
  const Json j = parse_document(text, "synergy");
  const auto langs = get<std::vector<std::string>>(j, "languages");
  const std::size_t k = langs.size();
  auto base = get<std::vector<double>>(j, "baseline_loss");
  if (base.size() != k) throw SchemaError("baseline_loss must have one entry per language");
  return SynergyMatrix(langs, std::move(base), optional_matrix_from_json(j.at("delta"), k, "delta"),
                       optional_matrix_from_json(j.at("relative"), k, "relative"),
                       matrix_from_json(j.at("tau"), k, "tau"));
}

std::string write_mixture_json(const MixtureSpec& spec,
                               const std::vector<std::string>& languages) {
  Json j = header("mixture");
  j["languages"] = languages;
  j["proportions"] = spec.proportions();
  j["gamma"] = spec.gamma();
  j["tau"] = matrix_to_json(spec.tau());
  Json params = Json::array();
  for (const auto& p : spec.per_language_params()) params.push_back(params_to_json(p));
  j["per_language_params"] = params;
  return dump(j);
}

Json template_to_json(const MixtureTemplate& m) {
  Json j;
  j["languages"] = m.languages();
  Json params = Json::array();
  for (const auto& p : m.params()) params.push_back(params_to_json(p));
  j["per_language_params"] = params;
  j["tau"] = matrix_to_json(m.tau());
  j["gamma"] = m.gamma();
  j["A"] = m.A();
  j["B"] = m.B();
  return j;
}

MixtureTemplate template_from_json(const Json& j) {
  const auto langs = get<std::vector<std::string>>(j, "languages");
  const auto& pj = j.at("per_language_params");
  if (!pj.is_array() || pj.size() != langs.size())
    throw SchemaError("per_language_params must have one entry per language");
  std::vector<PowerLawParams> params;
  for (const auto& p : pj) params.push_back(params_from_json(p));
  return MixtureTemplate(langs, std::move(params), matrix_from_json(j.at("tau"), langs.size(), "tau"),
                         get<double>(j, "gamma"), get<double>(j, "A"), get<double>(j, "B"));
}

std::string write_plan_json(const AllocationPlan& plan) {
  Json j = header("plan");
  j["model"] = template_to_json(plan.model);
  j["n_params"] = plan.n_params;
  j["d_total"] = plan.d_total;
  j["proportions"] = plan.proportions;
  j["token_counts"] = plan.token_counts;
  j["predicted_loss"] = plan.predicted_loss;
  j["uniform_loss"] = plan.uniform_loss;
  j["improvement"] = plan.improvement;
  return dump(j);
}

AllocationPlan read_plan_json(const std::string& text) {
  const Json j = parse_document(text, "plan");
  return AllocationPlan(template_from_json(j.at("model")), get<std::vector<double>>(j, "proportions"),
                        get<std::vector<double>>(j, "token_counts"),
                        get<double>(j, "predicted_loss"), get<double>(j, "uniform_loss"),
                        get<double>(j, "n_params"), get<double>(j, "d_total"));
}

std::string write_whatif_json(const WhatIfReport& r) {
  Json j = header("whatif");
  j["languages"] = r.languages;
  j["proportions"] = r.proportions;
  j["token_counts"] = r.token_counts;
  j["predicted_loss"] = r.predicted_loss;
  Json b;
  b["param_term"] = r.breakdown.param_term;
  b["data_term"] = r.breakdown.data_term;
  b["irreducible"] = r.breakdown.irreducible;
  j["breakdown"] = b;
  j["effective_tokens"] = r.effective_tokens;
  Json e;
  e["alpha_n"] = r.exponents.alpha_n;
  e["alpha_d"] = r.exponents.alpha_d;
  e["l_inf"] = r.exponents.l_inf;
  j["exponents"] = e;
  j["uniform_loss"] = r.uniform_loss;
  j["delta_vs_uniform"] = r.delta_vs_uniform;
  return dump(j);
}

std::string write_split_json(const std::string& tag, double budget, double flops_factor,
                             const ComputeSplit& split) {
  Json j = header("frontier");
  j["tag"] = tag;
  j["compute"] = budget;
  j["flops_factor"] = flops_factor;
  j["n_opt"] = split.n_opt;
  j["d_opt"] = split.d_opt;
  j["predicted_loss"] = split.predicted_loss;
  return dump(j);
}

}  // namespace slk
