// slk: command-line front end for fitting, synergy, allocation, frontier,
// synthetic data and reports.
//
// Exit status: 0 on success, 1 on invalid input, 2 when a fit does not
// converge or a constraint set is infeasible.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "slk/allocate.hpp"
#include "slk/error.hpp"
#include "slk/fitting.hpp"
#include "slk/fixtures.hpp"
#include "slk/ingest.hpp"
#include "slk/oracle.hpp"
#include "slk/serialize.hpp"
#include "slk/synergy.hpp"
#include "slk/text.hpp"

namespace fs = std::filesystem;
using namespace slk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFailed = 2;

std::uint64_t default_seed() {
  const char* env = std::getenv("SLK_SEED");
  if (env == nullptr || *env == '\0') return 42;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw ArgumentError(std::string("SLK_SEED='") + env + "' is not a non-negative integer");
  }
}

LanguageRegistry make_registry(const std::vector<std::string>& extra) {
  auto reg = LanguageRegistry::paper_default();
  for (const auto& l : extra) reg.add(l);
  return reg;
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
  } else {
    write_file(out, content);
  }
}

// --- fit -------------------------------------------------------------------

struct FitArgs {
  std::string input, format, group_by = "language", preset = "chinchilla", out;
  std::vector<std::string> languages;
  unsigned threads = 0;
};

int run_fit(const FitArgs& a) {
  const auto format = a.format.empty() ? format_from_path(a.input) : parse_format(a.format);
  const auto ds = load_dataset(a.input, format, make_registry(a.languages));
  FitConfig cfg = preset_by_name(a.preset);
  cfg.threads = a.threads;

  FitsDocument doc;
  doc.group_by = a.group_by;
  doc.config = config_to_json(cfg);
  doc.source_path = a.input;
  doc.source_hash = ds.provenance().content_hash;

  for (const auto& [key, records] : group_by_tag(ds)) {
    const bool is_direction = records.front().tag().is_direction();
    if (is_direction != (a.group_by == "direction"))
      throw ValidationError("tag '" + key + "' is a " + (is_direction ? "direction" : "language") +
                            " but --group-by is " + a.group_by);
    FitResult r = [&] {
      try {
        return fit_chinchilla(records, cfg);
      } catch (const ConvergenceError& e) {
        throw ConvergenceError("tag '" + key + "': " + e.what(), e.best_so_far());
      } catch (const ValidationError& e) {
        throw ValidationError("tag '" + key + "': " + e.what());
      }
    }();
    Bounds nr{INFINITY, -INFINITY}, dr{INFINITY, -INFINITY};
    for (const auto& rec : records) {
      nr = {std::min(nr.lo, rec.n_params()), std::max(nr.hi, rec.n_params())};
      dr = {std::min(dr.lo, rec.d_tokens()), std::max(dr.hi, rec.d_tokens())};
    }
    const auto gof = goodness_of_fit(r, records);
    doc.fits.push_back({key, std::move(r), gof, nr, dr});
  }
  emit(a.out, write_fits_json(doc));
  return kExitOk;
}

// --- predict ---------------------------------------------------------------

int run_predict(const std::string& fits_path, double n, double d, const std::string& tag) {
  const auto doc = read_fits_json(read_file(fits_path));
  auto line = [&](const FitEntry& e) {
    std::string extrapolated;
    if (e.n_range && (n < e.n_range->lo || n > e.n_range->hi)) extrapolated += " n";
    if (e.d_range && (d < e.d_range->lo || d > e.d_range->hi)) extrapolated += " d";
    std::cout << e.tag << " " << format_double(evaluate_power_law(e.result.params, n, d));
    if (!extrapolated.empty()) std::cout << " (extrapolated in" << extrapolated << ")";
    std::cout << "\n";
  };
  if (!tag.empty()) {
    line(find_fit(doc, tag));
  } else {
    for (const auto& e : doc.fits) line(e);
  }
  return kExitOk;
}

// --- synergy ---------------------------------------------------------------

int run_synergy(const std::string& pairs, const std::string& format, const std::string& tau,
                const std::vector<std::string>& languages, const std::string& out) {
  const auto reg = make_registry(languages);
  const auto fmt = format.empty() ? format_from_path(pairs) : parse_format(format);
  const auto m = compute_synergy(load_paired_runs(pairs, fmt, reg), reg);
  const auto mode = parse_tau_mode(tau);
  for (const auto& w : derive_transfer_coefficients(m, mode).warnings)
    std::cerr << "warning: " << w << "\n";
  emit(out, write_synergy_json(m, mode));
  if (!out.empty() && out != "-") std::cout << render_synergy_table(m);
  return kExitOk;
}

// --- allocate ----------------------------------------------------------------

struct AllocateArgs {
  std::string fits, tau, out;
  double gamma = 0, n = 0, tokens = 0;
  std::optional<double> floor, ceil, a, b;
  std::optional<std::uint64_t> seed;
  std::size_t starts = 64;
  unsigned threads = 0;
};

int run_allocate(const AllocateArgs& a) {
  const auto doc = read_fits_json(read_file(a.fits));
  const auto syn = read_synergy_json(read_file(a.tau));
  const auto& langs = syn.languages();
  std::vector<PowerLawParams> params;
  double mean_a = 0.0, mean_b = 0.0;
  for (const auto& l : langs) {
    const auto& p = find_fit(doc, l).result.params;
    params.push_back(p);
    mean_a += p.A() / static_cast<double>(langs.size());
    mean_b += p.B() / static_cast<double>(langs.size());
  }
  const MixtureTemplate model(langs, params, syn.tau(), a.gamma, a.a.value_or(mean_a),
                              a.b.value_or(mean_b));
  const auto constraints = AllocationConstraints::uniform_box(
      langs.size(), a.floor.value_or(kDefaultFloor), a.ceil.value_or(1.0));
  AllocationOptions opts;
  opts.seed = a.seed.value_or(default_seed());
  opts.starts = a.starts;
  opts.threads = a.threads;
  const auto plan = optimize_proportions(a.n, a.tokens, model, constraints, opts);
  emit(a.out, write_plan_json(plan));
  if (!a.out.empty() && a.out != "-") std::cout << render_plan_table(plan);
  return kExitOk;
}

// --- frontier ----------------------------------------------------------------

int run_frontier(const std::string& fits, const std::string& tag, double compute, double flops,
                 const std::string& out) {
  const auto doc = read_fits_json(read_file(fits));
  const auto split = compute_optimal_split(find_fit(doc, tag).result.params, compute, flops);
  emit(out, write_split_json(tag, compute, flops, split));
  return kExitOk;
}

// --- whatif ------------------------------------------------------------------

std::vector<double> parse_assignment(const std::string& text, const std::vector<std::string>& langs) {
  std::vector<double> p(langs.size(), 0.0);
  std::vector<bool> seen(langs.size(), false);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ArgumentError("--set entry '" + item + "' is not of the form lang=proportion");
    const auto name = normalize_language_name(trim(item.substr(0, eq)));
    const auto value = parse_double(trim(item.substr(eq + 1)));
    if (!value) throw ArgumentError("--set entry '" + item + "' has a non-numeric proportion");
    std::size_t i = 0;
    while (i < langs.size() && langs[i] != name) ++i;
    if (i == langs.size())
      throw LookupError("--set names language '" + name + "' which is not in the plan");
    if (seen[i]) throw ConflictError("--set assigns '" + name + "' twice");
    seen[i] = true;
    p[i] = *value;
  }
  return p;
}

int run_whatif(const std::string& plan_path, const std::string& set, const std::string& out) {
  const auto plan = read_plan_json(read_file(plan_path));
  const auto p = parse_assignment(set, plan.model.languages());
  emit(out, write_whatif_json(whatif(p, plan.n_params, plan.d_total, plan.model)));
  return kExitOk;
}

// --- synth -------------------------------------------------------------------

struct SynthArgs {
  std::string params, grid = "paper", unit = "raw", tag = "python", out, prefix = "synth";
  std::vector<double> n_values, d_values;
  double noise = 0.0;
  std::optional<std::uint64_t> seed;
};

int run_synth(const SynthArgs& a) {
  const Json j = Json::parse(read_file(a.params), nullptr, false);
  if (j.is_discarded()) throw SchemaError("--params is not valid JSON");
  const auto params = params_from_json(j.contains("params") ? j.at("params") : j);
  const GridUnit unit = a.unit == "billions" ? GridUnit::billions : GridUnit::raw;
  std::vector<GridPoint> grid;
  if (a.grid == "paper") {
    grid = paper_grid(unit);
  } else {
    if (a.n_values.empty() || a.d_values.empty())
      throw ArgumentError("--grid custom needs --n-values and --d-values");
    for (double n : a.n_values)
      for (double d : a.d_values) grid.emplace_back(n, d);
  }
  NoiseSpec noise;
  noise.kind = a.noise > 0 ? NoiseKind::lognormal : NoiseKind::none;
  noise.sigma = a.noise;
  noise.seed = a.seed.value_or(default_seed());
  const auto records = generate_surface(params, grid, noise, Tag::parse(a.tag), a.prefix);
  emit(a.out, serialize_records(records, format_from_path(a.out)));
  return kExitOk;
}

// --- report ------------------------------------------------------------------

struct Series {
  std::string name, x_label;
  std::vector<std::pair<double, double>> points;
};

std::string series_csv(const Series& s) {
  std::string out = s.x_label + ",loss\n";
  for (const auto& [x, y] : s.points) out += format_double(x) + "," + format_double(y) + "\n";
  return out;
}

std::string series_svg(const Series& s) {
  constexpr double w = 480, h = 320, m = 40;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& [x, y] : s.points) {
    x0 = std::min(x0, std::log10(x));
    x1 = std::max(x1, std::log10(x));
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  char buf[128];
  std::string path;
  for (const auto& [x, y] : s.points) {
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", path.empty() ? "M" : " L",
                  m + (std::log10(x) - x0) / (x1 - x0) * (w - 2 * m),
                  h - m - (y - y0) / (y1 - y0) * (h - 2 * m));
    path += buf;
  }
  std::snprintf(buf, sizeof buf, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\">\n", w, h);
  std::string svg = buf;
  svg += "<title>" + s.name + "</title>\n";
  std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"#888\"/>\n",
                m, m, w - 2 * m, h - 2 * m);
  svg += buf;
  svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"11\">", m, h - 8);
  svg += buf + s.x_label + " (log10 " + format_double(x0) + " .. " + format_double(x1) + ")</text>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"4\" y=\"%g\" font-size=\"11\">", m - 8);
  svg += buf + std::string("loss ") + format_double(y0) + " .. " + format_double(y1) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

std::vector<double> log_space(double lo, double hi, std::size_t count) {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i)
    v[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) /
                                       static_cast<double>(count - 1));
  return v;
}

int run_report(const std::string& fits_path, bool rank, const std::string& out) {
  const auto doc = read_fits_json(read_file(fits_path));
  const bool billions = doc.units.rfind("billions", 0) == 0;
  const double scale = billions ? 1e-9 : 1.0;
  std::string md = "# Scaling-law report\n\n";
  md += "Source: `" + fits_path + "` (" + std::to_string(doc.fits.size()) + " fits, units: " +
        doc.units + ")\n\n";
  md += "| tag | A | B | alpha_N | alpha_D | L_inf | converged | rmse | r^2 |\n";
  md += "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& e : doc.fits) {
    const auto& p = e.result.params;
    md += "| " + e.tag + " | " + format_double(p.A()) + " | " + format_double(p.B()) + " | " +
          format_double(p.alpha_n()) + " | " + format_double(p.alpha_d()) + " | " +
          format_double(p.l_inf()) + " | " + (e.result.converged ? "yes" : "no") + " | " +
          (e.gof ? format_double(e.gof->rmse) : "-") + " | " +
          (e.gof ? format_double(e.gof->r_squared) : "-") + " |\n";
  }
  if (rank) {
    std::map<std::string, FitResult> fits;
    for (const auto& e : doc.fits) fits.emplace(e.tag, e.result);
    md += "\n## Ranking by irreducible loss\n\n";
    std::size_t pos = 1;
    for (const auto& group : rank_by_irreducible_loss(fits)) {
      md += std::to_string(pos) + ". ";
      for (std::size_t i = 0; i < group.size(); ++i)
        md += (i ? " = " : "") + group[i].tag + " (" + format_double(group[i].l_inf) + ")";
      md += "\n";
      pos += group.size();
    }
  }

  const fs::path md_path(out);
  const std::string stem = (md_path.parent_path() / md_path.stem()).string();
  md += "\n## Series\n\n";
  for (const auto& e : doc.fits) {
    const auto& p = e.result.params;
    const Bounds nr = e.n_range.value_or(Bounds{1e8 * scale, 3.1e9 * scale});
    const Bounds dr = e.d_range.value_or(Bounds{2e9 * scale, 64e9 * scale});
    const double n_mid = std::sqrt(nr.lo * nr.hi), d_mid = std::sqrt(dr.lo * dr.hi);
    std::vector<Series> series{{e.tag + "-loss_vs_n", "n_params", {}},
                               {e.tag + "-loss_vs_d", "d_tokens", {}},
                               {e.tag + "-frontier", "compute", {}}};
    for (double n : log_space(nr.lo, nr.hi, 25))
      series[0].points.emplace_back(n, evaluate_power_law(p, n, d_mid));
    for (double d : log_space(dr.lo, dr.hi, 25))
      series[1].points.emplace_back(d, evaluate_power_law(p, n_mid, d));
    const double c_mid = kDefaultFlopsPerParamToken * n_mid * d_mid;
    for (double c : log_space(c_mid * 1e-2, c_mid * 1e2, 25)) {
      try {
        series[2].points.emplace_back(c, compute_optimal_split(p, c).predicted_loss);
      } catch (const DegenerateFrontierError&) {
        break;
      }
    }
    for (const auto& s : series) {
      if (s.points.empty()) continue;
      write_file(stem + "." + s.name + ".csv", series_csv(s));
      write_file(stem + "." + s.name + ".svg", series_svg(s));
      md += "- " + s.name + ": `" + fs::path(stem + "." + s.name).filename().string() +
            ".csv`, `.svg`\n";
    }
  }
  write_file(out, md);
  return kExitOk;
}

// --- fixture -----------------------------------------------------------------

int run_fixture_list() {
  for (const auto& name : fixture_names()) {
    const auto& f = load_fixture(name);
    std::cout << name << "  " << to_string(f.trust) << "  " << fixture_checksum(f) << "\n";
  }
  return kExitOk;
}

FitEntry fixture_fit(const std::string& tag, const PowerLawParams& p) {
  return {tag, FitResult(p, 0.0, {}, 0, true, true), std::nullopt, std::nullopt, std::nullopt};
}

int run_fixture_export(const std::string& name, const std::string& out) {
  const auto& f = load_fixture(name);
  FitsDocument doc;
  doc.source_path = "fixture:" + name;
  doc.source_hash = fixture_checksum(f);
  doc.units = f.units;
  std::string content;
  if (const auto* p = std::get_if<PowerLawParams>(&f.payload)) {
    std::string tag = "python";
    if (name.rfind("table2/", 0) == 0) {
      tag = name.substr(7);
      doc.group_by = "direction";
    }
    doc.fits.push_back(fixture_fit(tag, *p));
    content = write_fits_json(doc);
  } else if (const auto* dirs = std::get_if<std::vector<DirectionParams>>(&f.payload)) {
    doc.group_by = "direction";
    for (const auto& d : *dirs) doc.fits.push_back(fixture_fit(d.source + "_" + d.target, d.params));
    content = write_fits_json(doc);
  } else if (const auto* table = std::get_if<SynergyTable>(&f.payload)) {
    content = write_synergy_json(synergy_table_matrix(*table), TauMode::relative);
  } else if (const auto* runs = std::get_if<std::vector<PairedRun>>(&f.payload)) {
    content = serialize_paired_runs(*runs);
  } else {
    throw ArgumentError("fixture '" + name +
                        "' has no A and B and cannot be exported as a fit");
  }
  emit(out, content);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scaling-law toolkit for multilingual code pre-training"};
  app.require_subcommand(1);
  int code = kExitOk;
  const std::vector<std::string> formats{"csv", "jsonl"};

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit one power law per language or direction");
  fit_cmd->add_option("--input", fit.input, "Experiment log")->required();
  fit_cmd->add_option("--format", fit.format, "csv or jsonl (default: by extension)")
      ->check(CLI::IsMember(formats));
  fit_cmd->add_option("--group-by", fit.group_by)->check(CLI::IsMember({"language", "direction"}));
  fit_cmd->add_option("--preset", fit.preset)->check(CLI::IsMember({"chinchilla", "translation"}));
  fit_cmd->add_option("--out", fit.out, "fits.json (default stdout)");
  fit_cmd->add_option("--language", fit.languages, "Extra language ids to accept");
  fit_cmd->add_option("--threads", fit.threads);
  fit_cmd->callback([&] { code = run_fit(fit); });

  std::string fits_path, tag;
  double n = 0, d = 0;
  auto* predict_cmd = app.add_subcommand("predict", "Evaluate fitted laws at (n, d)");
  predict_cmd->add_option("--fits", fits_path)->required();
  predict_cmd->add_option("--n", n)->required();
  predict_cmd->add_option("--d", d)->required();
  predict_cmd->add_option("--tag", tag);
  predict_cmd->callback([&] { code = run_predict(fits_path, n, d, tag); });

  std::string pairs, pairs_format, tau_mode = "relative", syn_out;
  std::vector<std::string> syn_langs;
  auto* syn_cmd = app.add_subcommand("synergy", "Synergy matrix from paired bilingual runs");
  syn_cmd->add_option("--pairs", pairs)->required();
  syn_cmd->add_option("--format", pairs_format)->check(CLI::IsMember(formats));
  syn_cmd->add_option("--tau", tau_mode)->check(CLI::IsMember({"relative", "absolute"}));
  syn_cmd->add_option("--language", syn_langs, "Extra language ids to accept");
  syn_cmd->add_option("--out", syn_out);
  syn_cmd->callback([&] { code = run_synergy(pairs, pairs_format, tau_mode, syn_langs, syn_out); });

  AllocateArgs alloc;
  auto* alloc_cmd = app.add_subcommand("allocate", "Optimize token proportions");
  alloc_cmd->add_option("--fits", alloc.fits)->required();
  alloc_cmd->add_option("--tau", alloc.tau, "Synergy matrix JSON")->required();
  alloc_cmd->add_option("--gamma", alloc.gamma)->required();
  alloc_cmd->add_option("--n", alloc.n)->required();
  alloc_cmd->add_option("--tokens", alloc.tokens)->required();
  alloc_cmd->add_option("--floor", alloc.floor);
  alloc_cmd->add_option("--ceil", alloc.ceil);
  alloc_cmd->add_option("--A", alloc.a, "Shared A (default: mean of fitted A)");
  alloc_cmd->add_option("--B", alloc.b, "Shared B (default: mean of fitted B)");
  alloc_cmd->add_option("--seed", alloc.seed);
  alloc_cmd->add_option("--starts", alloc.starts);
  alloc_cmd->add_option("--threads", alloc.threads);
  alloc_cmd->add_option("--out", alloc.out);
  alloc_cmd->callback([&] { code = run_allocate(alloc); });

  std::string fr_fits, fr_tag, fr_out;
  double compute = 0, flops = kDefaultFlopsPerParamToken;
  auto* fr_cmd = app.add_subcommand("frontier", "Compute-optimal (n, d) split for a budget");
  fr_cmd->add_option("--fits", fr_fits)->required();
  fr_cmd->add_option("--tag", fr_tag)->required();
  fr_cmd->add_option("--compute", compute)->required();
  fr_cmd->add_option("--flops-factor", flops);
  fr_cmd->add_option("--out", fr_out);
  fr_cmd->callback([&] { code = run_frontier(fr_fits, fr_tag, compute, flops, fr_out); });

  std::string plan_path, assignment, wi_out;
  auto* wi_cmd = app.add_subcommand("whatif", "Evaluate a proportion vector against a plan's model");
  wi_cmd->add_option("--plan", plan_path)->required();
  wi_cmd->add_option("--set", assignment, "lang=prop,...; unlisted languages get 0")->required();
  wi_cmd->add_option("--out", wi_out);
  wi_cmd->callback([&] { code = run_whatif(plan_path, assignment, wi_out); });

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic loss surface");
  synth_cmd->add_option("--params", synth.params, "JSON with A, B, alpha_n, alpha_d, l_inf")
      ->required();
  synth_cmd->add_option("--grid", synth.grid)->check(CLI::IsMember({"paper", "custom"}));
  synth_cmd->add_option("--unit", synth.unit)->check(CLI::IsMember({"raw", "billions"}));
  synth_cmd->add_option("--n-values", synth.n_values);
  synth_cmd->add_option("--d-values", synth.d_values);
  synth_cmd->add_option("--noise", synth.noise)->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--seed", synth.seed);
  synth_cmd->add_option("--tag", synth.tag, "Language or src_dst direction");
  synth_cmd->add_option("--run-prefix", synth.prefix);
  synth_cmd->add_option("--out", synth.out)->required();
  synth_cmd->callback([&] { code = run_synth(synth); });

  std::string rep_fits, rep_out;
  bool rank = false;
  auto* rep_cmd = app.add_subcommand("report", "Markdown report with CSV and SVG series");
  rep_cmd->add_option("--fits", rep_fits)->required();
  rep_cmd->add_flag("--rank-linf", rank);
  rep_cmd->add_option("--out", rep_out)->required();
  rep_cmd->callback([&] { code = run_report(rep_fits, rank, rep_out); });

  std::string fx_name, fx_out;
  auto* fx_cmd = app.add_subcommand("fixture", "Published constants");
  fx_cmd->require_subcommand(1);
  fx_cmd->add_subcommand("list", "Names, trust and checksums")->callback([&] {
    code = run_fixture_list();
  });
  auto* fx_export = fx_cmd->add_subcommand("export", "Write a fixture as fits/synergy JSON or CSV");
  fx_export->add_option("--name", fx_name)->required();
  fx_export->add_option("--out", fx_out);
  fx_export->callback([&] { code = run_fixture_export(fx_name, fx_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: fit did not converge: " << e.what() << "\n";
    return kExitFailed;
  } catch (const ConstraintError& e) {
    std::cerr << "error: infeasible constraints: " << e.what() << "\n";
    return kExitFailed;
  } catch (const DegenerateFrontierError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return code;
}
