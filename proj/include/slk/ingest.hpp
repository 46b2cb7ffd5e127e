#pragma once

// Experiment logs on disk.
//
// CSV: UTF-8, comma separated, header on the first line. Required columns
// are run_id, n_params, d_tokens, val_loss and either `language` or the pair
// direction_src/direction_dst; `weight` is optional (default 1). JSONL uses
// the same names, one object per line, numerics as JSON numbers. N is the
// raw trainable-parameter count and D the raw token count. Unknown columns
// are ignored with a warning.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slk/core.hpp"

namespace slk {

enum class DataFormat { csv, jsonl };

DataFormat parse_format(const std::string& name);
std::string to_string(DataFormat f);
/// csv/jsonl by file extension, defaulting to csv.
DataFormat format_from_path(const std::string& path);

struct Provenance {
  std::string path;
  DataFormat format = DataFormat::csv;
  std::size_t row_count = 0;
  std::string content_hash;  // fnv1a64 of the file bytes
};

class Dataset {
 public:
  Dataset(std::vector<ExperimentRecord> records, LanguageRegistry registry,
          Provenance provenance = {}, std::vector<std::string> warnings = {});

  const std::vector<ExperimentRecord>& records() const { return records_; }
  const LanguageRegistry& registry() const { return registry_; }
  const Provenance& provenance() const { return provenance_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::size_t size() const { return records_.size(); }

 private:
  std::vector<ExperimentRecord> records_;
  LanguageRegistry registry_;
  Provenance provenance_;
  std::vector<std::string> warnings_;
};

Dataset load_dataset(const std::string& path, DataFormat format,
                     const LanguageRegistry& registry = LanguageRegistry::paper_default());
Dataset parse_dataset(const std::string& text, DataFormat format,
                      const LanguageRegistry& registry = LanguageRegistry::paper_default(),
                      const std::string& source_name = "<memory>");

std::string serialize_records(const std::vector<ExperimentRecord>& records, DataFormat format);
void write_dataset(const Dataset& ds, const std::string& path, DataFormat format);

/// Partition by tag key; groups keep input order, keys sort lexicographically.
std::map<std::string, std::vector<ExperimentRecord>> group_by_tag(const Dataset& ds);

/// One bilingual mixing observation: loss on `target` after training on
/// target+auxiliary data versus target data repeated twice.
struct PairedRun {
  std::string target;
  std::string auxiliary;
  double mixed_loss;
  std::optional<double> baseline_loss;
};

/// Columns target, auxiliary, mixed_loss, baseline_loss. A blank baseline is
/// allowed when another row for the same target supplies it.
std::vector<PairedRun> load_paired_runs(
    const std::string& path, DataFormat format,
    const LanguageRegistry& registry = LanguageRegistry::paper_default());
std::vector<PairedRun> parse_paired_runs(
    const std::string& text, DataFormat format,
    const LanguageRegistry& registry = LanguageRegistry::paper_default());
std::string serialize_paired_runs(const std::vector<PairedRun>& runs);

}  // namespace slk
