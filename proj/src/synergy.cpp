#include "slk/synergy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "slk/error.hpp"
#include "slk/text.hpp"

namespace slk {

namespace {

int sign(double v) { return (v > 0) - (v < 0); }

}  // namespace

TauMode parse_tau_mode(const std::string& name) {
  if (name == "relative") return TauMode::relative;
  if (name == "absolute") return TauMode::absolute;
  throw ArgumentError("unknown tau mode '" + name + "' (expected relative or absolute)");
}

std::string to_string(TauMode m) { return m == TauMode::relative ? "relative" : "absolute"; }

SynergyMatrix compute_synergy(const std::vector<PairedRun>& pairs,
                              const LanguageRegistry& registry) {
  std::set<std::size_t> used;
  std::map<std::string, double> baseline;
  std::map<std::pair<std::string, std::string>, double> mixed;
  for (const auto& p : pairs) {
    used.insert(registry.index_of(p.target));
    used.insert(registry.index_of(p.auxiliary));
    const std::string t = registry.canonical(p.target);
    const std::string a = registry.canonical(p.auxiliary);
    if (!mixed.emplace(std::make_pair(t, a), p.mixed_loss).second)
      throw ConflictError("more than one observation for target " + t + " with auxiliary " + a);
    std::optional<double> base = p.baseline_loss;
    if (t == a) {
      if (base && *base != p.mixed_loss)
        throw ConsistencyError("self-pair " + t + " has mixed_loss != baseline_loss");
      base = p.mixed_loss;
    }
    if (!base) continue;
    if (!(*base > 0)) throw ValidationError("baseline loss for " + t + " must be positive");
    auto [it, fresh] = baseline.emplace(t, *base);
    if (!fresh && std::abs(it->second - *base) > 1e-12 * std::abs(*base))
      throw ConsistencyError("rows disagree on the baseline loss of " + t);
  }

  std::vector<std::string> missing;
  for (const auto& [key, loss] : mixed)
    if (!baseline.count(key.first) &&
        std::find(missing.begin(), missing.end(), key.first) == missing.end())
      missing.push_back(key.first);
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw IncompleteDataError("no baseline loss for target(s): " + list);
  }

  std::vector<std::string> langs;
  for (auto idx : used) langs.push_back(registry.languages()[idx]);
  const std::size_t k = langs.size();
  std::vector<double> base_vec(k, 0.0);
  OptionalMatrix delta(k, std::vector<std::optional<double>>(k));
  OptionalMatrix relative = delta;
  Matrix tau = zero_matrix(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto b = baseline.find(langs[i]);
    if (b != baseline.end()) base_vec[i] = b->second;
    delta[i][i] = 0.0;
    relative[i][i] = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      auto m = mixed.find({langs[i], langs[j]});
      if (m == mixed.end()) continue;
      const double d = base_vec[i] - m->second;
      delta[i][j] = d;
      relative[i][j] = d / base_vec[i];
      tau[i][j] = d / base_vec[i];
    }
  }
  return {std::move(langs), std::move(base_vec), std::move(delta), std::move(relative),
          std::move(tau)};
}

TransferCoefficients derive_transfer_coefficients(const SynergyMatrix& m, TauMode mode) {
  const std::size_t k = m.size();
  TransferCoefficients out{zero_matrix(k), {}};
  const auto& src = mode == TauMode::relative ? m.relative() : m.delta();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      if (src[i][j])
        out.tau[i][j] = *src[i][j];
      else
        out.warnings.push_back("no synergy observation for target " + m.languages()[i] +
                               " with auxiliary " + m.languages()[j] + "; tau set to 0");
    }
  return out;
}

std::vector<AsymmetricPair> asymmetry_report(const SynergyMatrix& m) {
  std::vector<AsymmetricPair> out;
  const auto& d = m.delta();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!d[i][j] || !d[j][i]) continue;
      if (sign(*d[i][j]) != sign(*d[j][i]))
        out.push_back({m.languages()[i], m.languages()[j], *d[i][j], *d[j][i]});
    }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::abs(a.delta_ij - a.delta_ji) > std::abs(b.delta_ij - b.delta_ji);
  });
  return out;
}

std::string synergy_to_csv(const SynergyMatrix& m, TauMode mode) {
  const auto& src = mode == TauMode::relative ? m.relative() : m.delta();
  std::string out = "target";
  for (const auto& l : m.languages()) out += "," + l;
  out += "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += m.languages()[i];
    for (std::size_t j = 0; j < m.size(); ++j)
      out += "," + (src[i][j] ? format_double(*src[i][j]) : std::string());
    out += "\n";
  }
  return out;
}

std::string render_synergy_table(const SynergyMatrix& m) {
  std::size_t width = 8;
  for (const auto& l : m.languages()) width = std::max(width, l.size() + 2);
  auto pad = [&](const std::string& s) {
    return std::string(width > s.size() ? width - s.size() : 0, ' ') + s;
  };
  std::string out = pad("target");
  for (const auto& l : m.languages()) out += pad(l);
  out += "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += pad(m.languages()[i]);
    for (std::size_t j = 0; j < m.size(); ++j) {
      const auto& r = m.relative()[i][j];
      if (i == j) {
        out += pad("--");
      } else if (!r) {
        out += pad("n/a");
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%+.2f%%", *r * 100.0);
        out += pad(buf);
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace slk
