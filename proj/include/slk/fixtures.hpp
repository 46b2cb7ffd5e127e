#pragma once

// Published constants, transcribed once and pinned. Each fixture records
// where the numbers come from, whether they are trusted, and the units the
// parameters assume.

#include <string>
#include <variant>
#include <vector>

#include "slk/core.hpp"
#include "slk/ingest.hpp"
#include "slk/mixture.hpp"

namespace slk {

enum class Trust { trusted, untrusted };

std::string to_string(Trust t);

struct DirectionParams {
  std::string source;
  std::string target;
  PowerLawParams params;  // L_inf stored as 0: the table omits it
};

/// Table of bilingual runs: absolute values per (target row, auxiliary
/// column) plus the signed relative change in percent printed beside them.
struct SynergyTable {
  std::vector<std::string> languages;
  Matrix value;
  Matrix percent;  // diagonal 0
};

/// Exponents and floor of the law refit under the optimized mixture; the
/// matching A and B were not published.
struct MixtureFit {
  double alpha_n;
  double alpha_d;
  double l_inf;
};

using FixturePayload = std::variant<PowerLawParams, MixtureFit, std::vector<DirectionParams>,
                                    SynergyTable, std::vector<PairedRun>>;

struct PaperFixture {
  std::string name;
  FixturePayload payload;
  std::string provenance;
  Trust trust;
  std::string units;  // "raw counts", "billions", or "n/a"
  std::string notes;
};

/// Throws LookupError listing the registered names.
const PaperFixture& load_fixture(const std::string& name);
std::vector<std::string> fixture_names();

/// fnv1a64 over a canonical text rendering of the payload.
std::string fixture_checksum(const PaperFixture& f);

/// All 42 per-direction parameter sets, row = source, column = target.
const std::vector<DirectionParams>& table2_directions();
const PowerLawParams& table2_params(const std::string& source, const std::string& target);

/// Relative = percent/100, delta = relative * diagonal value; tau relative.
SynergyMatrix synergy_table_matrix(const SynergyTable& table);

/// Paired runs reconstructed from the prose gains around three loss pairs;
/// see the fixture notes for the borrowed Python baseline.
const std::vector<PairedRun>& prose_synergy_runs();

}  // namespace slk
