#pragma once

// JSON artifacts. Every document carries `schema_version`; readers reject
// other versions with SchemaError. Doubles are written in shortest
// round-trip form, keys in a fixed order, so reruns are byte-identical.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "slk/allocate.hpp"
#include "slk/core.hpp"
#include "slk/fitting.hpp"
#include "slk/synergy.hpp"

namespace slk {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json params_to_json(const PowerLawParams& p);
PowerLawParams params_from_json(const Json& j);

Json config_to_json(const FitConfig& cfg);

struct FitEntry {
  std::string tag;
  FitResult result;
  std::optional<GoodnessOfFit> gof;
  std::optional<Bounds> n_range;
  std::optional<Bounds> d_range;
};

struct FitsDocument {
  std::vector<FitEntry> fits;
  std::string group_by = "language";
  Json config = Json::object();
  std::string source_path;
  std::string source_hash;
  std::string units = "raw counts";
};

std::string write_fits_json(const FitsDocument& doc);
FitsDocument read_fits_json(const std::string& text);
/// Throws LookupError listing the tags present.
const FitEntry& find_fit(const FitsDocument& doc, const std::string& tag);

std::string write_synergy_json(const SynergyMatrix& m, TauMode mode);
/// Tau is taken as stored; relative/delta are re-checked by SynergyMatrix.
SynergyMatrix read_synergy_json(const std::string& text);

std::string write_mixture_json(const MixtureSpec& spec, const std::vector<std::string>& languages);

Json template_to_json(const MixtureTemplate& m);
MixtureTemplate template_from_json(const Json& j);

std::string write_plan_json(const AllocationPlan& plan);
AllocationPlan read_plan_json(const std::string& text);

std::string write_whatif_json(const WhatIfReport& r);
std::string write_split_json(const std::string& tag, double budget, double flops_factor,
                             const ComputeSplit& split);

/// Parses a document and checks its schema_version and kind.
Json parse_document(const std::string& text, const std::string& kind);

}  // namespace slk
