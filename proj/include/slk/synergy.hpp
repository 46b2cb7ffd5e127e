#pragma once

// Synergy gain between languages from paired bilingual runs.
//
// delta[i][j] = baseline(i) - mixed(i, j): positive means mixing language j
// into the training data of target i lowered i's validation loss.

#include <string>
#include <vector>

#include "slk/core.hpp"
#include "slk/ingest.hpp"

namespace slk {

enum class TauMode { relative, absolute };

TauMode parse_tau_mode(const std::string& name);
std::string to_string(TauMode m);

/// Languages are ordered by `registry`; only languages that appear are kept.
/// tau is filled with the relative-mode coefficients.
SynergyMatrix compute_synergy(const std::vector<PairedRun>& pairs,
                              const LanguageRegistry& registry = LanguageRegistry::paper_default());

struct TransferCoefficients {
  Matrix tau;
  std::vector<std::string> warnings;  // one per absent off-diagonal cell
};

TransferCoefficients derive_transfer_coefficients(const SynergyMatrix& m,
                                                  TauMode mode = TauMode::relative);

struct AsymmetricPair {
  std::string language_i;
  std::string language_j;
  double delta_ij;
  double delta_ji;
};

/// Pairs whose two directions disagree in sign, largest |delta_ij - delta_ji| first.
std::vector<AsymmetricPair> asymmetry_report(const SynergyMatrix& m);

/// Header row and first column carry language ids; absent cells are blank.
std::string synergy_to_csv(const SynergyMatrix& m, TauMode mode);
/// Aligned table of signed relative gains in percent.
std::string render_synergy_table(const SynergyMatrix& m);

}  // namespace slk
