#include "slk/ingest.hpp"

#include <algorithm>
#include <iostream>
#include <set>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "slk/error.hpp"
#include "slk/text.hpp"

namespace slk {

namespace {

using json = nlohmann::json;

// A field as read from disk: absent/null, text, or a JSON number.
using Field = std::variant<std::monostate, std::string, double>;

struct RawRow {
  std::size_t row;   // 1-based data row
  std::size_t line;  // 1-based physical line
  std::map<std::string, Field> fields;
};

struct RawTable {
  std::vector<std::string> columns;  // union of names seen
  std::vector<RawRow> rows;
};

std::string where(const RawRow& r) {
  return "row " + std::to_string(r.row) + " (line " + std::to_string(r.line) + ")";
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

RawTable read_csv(const std::string& text) {
  RawTable t;
  auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i == lines.size()) return t;
  std::string header = lines[i];
  if (header.rfind("\xEF\xBB\xBF", 0) == 0) header.erase(0, 3);
  t.columns = split_csv_line(header);
  std::size_t row = 0;
  for (++i; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    ++row;
    auto cells = split_csv_line(lines[i]);
    RawRow r{row, i + 1, {}};
    if (cells.size() != t.columns.size())
      throw SchemaError(where(r) + ": expected " + std::to_string(t.columns.size()) +
                        " fields, found " + std::to_string(cells.size()));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].empty())
        r.fields[t.columns[c]] = std::monostate{};
      else
        r.fields[t.columns[c]] = cells[c];
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

RawTable read_jsonl(const std::string& text) {
  RawTable t;
  std::set<std::string> seen;
  auto lines = split_lines(text);
  std::size_t row = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    ++row;
    RawRow r{row, i + 1, {}};
    json obj;
    try {
      obj = json::parse(lines[i]);
    } catch (const json::parse_error& e) {
      throw SchemaError(where(r) + ": invalid JSON: " + e.what());
    }
    if (!obj.is_object()) throw SchemaError(where(r) + ": expected a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (seen.insert(it.key()).second) t.columns.push_back(it.key());
      const auto& v = it.value();
      if (v.is_null())
        r.fields[it.key()] = std::monostate{};
      else if (v.is_string())
        r.fields[it.key()] = v.get<std::string>();
      else if (v.is_number())
        r.fields[it.key()] = v.get<double>();
      else
        throw SchemaError(where(r) + ": field '" + it.key() + "' must be a string or number");
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

RawTable read_table(const std::string& text, DataFormat format) {
  return format == DataFormat::csv ? read_csv(text) : read_jsonl(text);
}

bool present(const RawRow& r, const std::string& name) {
  auto it = r.fields.find(name);
  return it != r.fields.end() && !std::holds_alternative<std::monostate>(it->second);
}

std::string text_field(const RawRow& r, const std::string& name) {
  auto it = r.fields.find(name);
  if (it == r.fields.end() || std::holds_alternative<std::monostate>(it->second))
    throw ValidationError(where(r) + ": missing value for '" + name + "'");
  if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
  return format_double(std::get<double>(it->second));
}

double number_field(const RawRow& r, const std::string& name, DataFormat format) {
  auto it = r.fields.find(name);
  if (it == r.fields.end() || std::holds_alternative<std::monostate>(it->second))
    throw ValidationError(where(r) + ": missing value for '" + name + "'");
  if (const auto* d = std::get_if<double>(&it->second)) return *d;
  if (format == DataFormat::jsonl)
    throw ValidationError(where(r) + ": '" + name + "' must be a JSON number");
  auto v = parse_double(std::get<std::string>(it->second));
  if (!v)
    throw ValidationError(where(r) + ": '" + name + "' is not a number: '" +
                          std::get<std::string>(it->second) + "'");
  return *v;
}

std::string canonical_language(const RawRow& r, const LanguageRegistry& reg,
                               const std::string& column) {
  const std::string raw = text_field(r, column);
  if (auto idx = reg.find(raw)) return reg.languages()[*idx];
  throw ValidationError(where(r) + ": " + column + " '" + raw + "' is not in the language registry");
}

bool has_column(const RawTable& t, const std::string& name) {
  return std::find(t.columns.begin(), t.columns.end(), name) != t.columns.end();
}

std::vector<std::string> check_columns(const RawTable& t, const std::vector<std::string>& required,
                                       const std::vector<std::string>& optional,
                                       DataFormat format) {
  // JSONL rows may omit optional keys, so only CSV headers are checked up front.
  if (format == DataFormat::csv || !t.rows.empty()) {
    for (const auto& col : required)
      if (!has_column(t, col)) throw SchemaError("missing required column '" + col + "'");
  }
  std::vector<std::string> warnings;
  for (const auto& col : t.columns) {
    if (std::find(required.begin(), required.end(), col) == required.end() &&
        std::find(optional.begin(), optional.end(), col) == optional.end())
      warnings.push_back("ignoring unknown column '" + col + "'");
  }
  return warnings;
}

}  // namespace

DataFormat parse_format(const std::string& name) {
  if (name == "csv") return DataFormat::csv;
  if (name == "jsonl") return DataFormat::jsonl;
  throw ArgumentError("unknown format '" + name + "' (expected csv or jsonl)");
}

std::string to_string(DataFormat f) { return f == DataFormat::csv ? "csv" : "jsonl"; }

DataFormat format_from_path(const std::string& path) {
  const bool jsonl = path.size() >= 6 && (path.ends_with(".jsonl") || path.ends_with(".ndjson"));
  return jsonl ? DataFormat::jsonl : DataFormat::csv;
}

Dataset::Dataset(std::vector<ExperimentRecord> records, LanguageRegistry registry,
                 Provenance provenance, std::vector<std::string> warnings)
    : records_(std::move(records)),
      registry_(std::move(registry)),
      provenance_(std::move(provenance)),
      warnings_(std::move(warnings)) {
  std::set<std::string> ids;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (!ids.insert(r.run_id()).second)
      throw ConflictError("duplicate run_id '" + r.run_id() + "' at row " + std::to_string(i + 1));
    for (const auto& lang : {r.tag().source(), r.tag().target()}) {
      if (!lang.empty() && !registry_.contains(lang))
        throw ValidationError("row " + std::to_string(i + 1) + ": language '" + lang +
                              "' is not in the registry");
    }
  }
}

Dataset parse_dataset(const std::string& text, DataFormat format,
                      const LanguageRegistry& registry, const std::string& source_name) {
  const RawTable table = read_table(text, format);
  const bool by_direction = has_column(table, "direction_src") || has_column(table, "direction_dst");
  std::vector<std::string> required{"run_id", "n_params", "d_tokens", "val_loss"};
  if (!has_column(table, "language") || by_direction) {
    if (!by_direction) required.push_back("language");
  }
  auto warnings = check_columns(
      table, required, {"language", "direction_src", "direction_dst", "weight"}, format);
  for (const auto& w : warnings) std::cerr << "warning: " << source_name << ": " << w << "\n";

  std::vector<ExperimentRecord> records;
  std::set<std::string> ids;
  for (const auto& row : table.rows) {
    const std::string run_id = text_field(row, "run_id");
    if (!ids.insert(run_id).second)
      throw ConflictError(where(row) + ": duplicate run_id '" + run_id + "'");
    std::optional<Tag> tag;
    if (present(row, "direction_src") || present(row, "direction_dst")) {
      auto src = canonical_language(row, registry, "direction_src");
      auto dst = canonical_language(row, registry, "direction_dst");
      if (src == dst) throw ValidationError(where(row) + ": direction source equals target");
      tag = Tag::direction(src, dst);
    } else {
      tag = Tag::language(canonical_language(row, registry, "language"));
    }
    const double n = number_field(row, "n_params", format);
    const double d = number_field(row, "d_tokens", format);
    const double loss = number_field(row, "val_loss", format);
    const double w = present(row, "weight") ? number_field(row, "weight", format) : 1.0;
    auto positive = [&](double v, const char* name) {
      if (!(v > 0) || !std::isfinite(v))
        throw ValidationError(where(row) + ": " + name + " must be positive, got " +
                              format_double(v));
    };
    positive(n, "n_params");
    positive(d, "d_tokens");
    positive(loss, "val_loss");
    if (!(w >= 0) || !std::isfinite(w))
      throw ValidationError(where(row) + ": weight must be non-negative");
    records.emplace_back(run_id, *tag, n, d, loss, w);
  }
  Provenance prov{source_name, format, records.size(), hex64(fnv1a64(text))};
  return Dataset(std::move(records), registry, std::move(prov), std::move(warnings));
}

Dataset load_dataset(const std::string& path, DataFormat format,
                     const LanguageRegistry& registry) {
  return parse_dataset(read_file(path), format, registry, path);
}

std::string serialize_records(const std::vector<ExperimentRecord>& records, DataFormat format) {
  std::string out;
  if (format == DataFormat::csv) {
    out = "run_id,language,direction_src,direction_dst,n_params,d_tokens,val_loss,weight\n";
    for (const auto& r : records) {
      const bool dir = r.tag().is_direction();
      out += csv_escape(r.run_id()) + ",";
      out += (dir ? std::string() : r.tag().source()) + ",";
      out += (dir ? r.tag().source() : std::string()) + ",";
      out += (dir ? r.tag().target() : std::string()) + ",";
      out += format_double(r.n_params()) + "," + format_double(r.d_tokens()) + "," +
             format_double(r.val_loss()) + "," + format_double(r.weight()) + "\n";
    }
    return out;
  }
  for (const auto& r : records) {
    json obj = json::object();
    obj["run_id"] = r.run_id();
    if (r.tag().is_direction()) {
      obj["direction_src"] = r.tag().source();
      obj["direction_dst"] = r.tag().target();
    } else {
      obj["language"] = r.tag().source();
    }
    obj["n_params"] = r.n_params();
    obj["d_tokens"] = r.d_tokens();
    obj["val_loss"] = r.val_loss();
    obj["weight"] = r.weight();
    out += obj.dump() + "\n";
  }
  return out;
}

void write_dataset(const Dataset& ds, const std::string& path, DataFormat format) {
  write_file(path, serialize_records(ds.records(), format));
}

std::map<std::string, std::vector<ExperimentRecord>> group_by_tag(const Dataset& ds) {
  std::map<std::string, std::vector<ExperimentRecord>> groups;
  for (const auto& r : ds.records()) groups[r.tag().key()].push_back(r);
  return groups;
}

std::vector<PairedRun> parse_paired_runs(const std::string& text, DataFormat format,
                                         const LanguageRegistry& registry) {
  const RawTable table = read_table(text, format);
  auto warnings = check_columns(table, {"target", "auxiliary", "mixed_loss", "baseline_loss"}, {},
                                format);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  std::vector<PairedRun> runs;
  for (const auto& row : table.rows) {
    PairedRun p{canonical_language(row, registry, "target"),
                canonical_language(row, registry, "auxiliary"),
                number_field(row, "mixed_loss", format), std::nullopt};
    if (!(p.mixed_loss > 0) || !std::isfinite(p.mixed_loss))
      throw ValidationError(where(row) + ": mixed_loss must be positive");
    if (present(row, "baseline_loss")) {
      const double b = number_field(row, "baseline_loss", format);
      if (!(b > 0) || !std::isfinite(b))
        throw ValidationError(where(row) + ": baseline_loss must be positive, got " +
                              format_double(b));
      p.baseline_loss = b;
    }
    if (p.target == p.auxiliary && p.baseline_loss && *p.baseline_loss != p.mixed_loss)
      throw ConsistencyError(where(row) + ": self-pair " + p.target +
                             " must have mixed_loss equal to baseline_loss");
    runs.push_back(std::move(p));
  }
  return runs;
}

std::vector<PairedRun> load_paired_runs(const std::string& path, DataFormat format,
                                        const LanguageRegistry& registry) {
  return parse_paired_runs(read_file(path), format, registry);
}

std::string serialize_paired_runs(const std::vector<PairedRun>& runs) {
  std::string out = "target,auxiliary,mixed_loss,baseline_loss\n";
  for (const auto& p : runs) {
    out += p.target + "," + p.auxiliary + "," + format_double(p.mixed_loss) + "," +
           (p.baseline_loss ? format_double(*p.baseline_loss) : std::string()) + "\n";
  }
  return out;
}

}  // namespace slk
