#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "slk/error.hpp"
#include "slk/fixtures.hpp"
#include "slk/synergy.hpp"

using namespace slk;

namespace {

double delta_of(const SynergyMatrix& m, const std::string& t, const std::string& a) {
  return *m.delta()[m.index_of(t)][m.index_of(a)];
}

}  // namespace

TEST_CASE("java gains from csharp") {
  const auto m = compute_synergy({{"java", "csharp", 0.718, 0.903}});
  CHECK(std::abs(delta_of(m, "java", "csharp") - 0.185) <= 1e-12);
  const double rel = *m.relative()[m.index_of("java")][m.index_of("csharp")];
  CHECK(std::abs(rel - 0.205) <= 0.001);
  CHECK(m.tau()[m.index_of("java")][m.index_of("csharp")] == rel);
  CHECK(*m.delta()[0][0] == 0.0);
  CHECK(m.tau()[1][1] == 0.0);
}

TEST_CASE("prose gains reproduce") {
  const auto m = compute_synergy(prose_synergy_runs());
  CHECK(delta_of(m, "python", "rust") == doctest::Approx(-0.021).epsilon(1e-12));
  CHECK(delta_of(m, "python", "java") == doctest::Approx(0.010).epsilon(1e-12));
  CHECK(delta_of(m, "java", "python") == doctest::Approx(0.054).epsilon(1e-12));
  CHECK(delta_of(m, "typescript", "javascript") == doctest::Approx(0.018).epsilon(1e-12));
  CHECK(!m.delta()[m.index_of("go")][m.index_of("rust")]);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(*m.delta()[i][i] == 0.0);
    CHECK(m.tau()[i][i] == 0.0);
  }
}

TEST_CASE("self pair and input errors") {
  const auto m = compute_synergy({{"go", "go", 0.42, 0.42}, {"go", "rust", 0.40, std::nullopt}});
  CHECK(*m.delta()[0][0] == 0.0);
  CHECK(delta_of(m, "go", "rust") == doctest::Approx(0.02));

  CHECK_THROWS_AS(compute_synergy({{"java", "go", 0.8, 0.9}, {"java", "go", 0.7, 0.9}}),
                  ConflictError);
  CHECK_THROWS_AS(compute_synergy({{"java", "go", 0.8, 0.9}, {"java", "rust", 0.7, 0.95}}),
                  ConsistencyError);
  CHECK_THROWS_AS(compute_synergy({{"java", "go", 0.8, std::nullopt}}), IncompleteDataError);
}

TEST_CASE("transfer coefficients") {
  const auto m = compute_synergy(prose_synergy_runs());
  const auto rel = derive_transfer_coefficients(m, TauMode::relative);
  const auto abs = derive_transfer_coefficients(m, TauMode::absolute);
  const auto j = m.index_of("java"), c = m.index_of("csharp"), g = m.index_of("go");
  CHECK(rel.tau[j][c] == *m.relative()[j][c]);
  CHECK(abs.tau[j][c] == *m.delta()[j][c]);
  CHECK(rel.tau[j][g] == 0.0);
  CHECK(!rel.warnings.empty());
  CHECK(parse_tau_mode("absolute") == TauMode::absolute);
  CHECK_THROWS_AS(parse_tau_mode("log"), ArgumentError);

  const auto zero = compute_synergy({{"go", "rust", 0.4, 0.4}, {"rust", "go", 0.3, 0.3}});
  for (const auto& row : derive_transfer_coefficients(zero).tau)
    for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("table1 normalized by hand") {
  const auto& t = std::get<SynergyTable>(load_fixture("table1").payload);
  const auto m = synergy_table_matrix(t);
  const auto tau = derive_transfer_coefficients(m).tau;
  CHECK(tau[m.index_of("java")][m.index_of("csharp")] == doctest::Approx(0.2058).epsilon(1e-12));
  CHECK(tau[m.index_of("python")][m.index_of("rust")] == doctest::Approx(-0.0272).epsilon(1e-12));
  CHECK(tau[m.index_of("rust")][m.index_of("python")] == doctest::Approx(0.0387).epsilon(1e-12));
  CHECK(tau[m.index_of("go")][m.index_of("csharp")] == doctest::Approx(0.0295).epsilon(1e-12));
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t k = 0; k < 7; ++k)
      CHECK(tau[i][k] == doctest::Approx(t.percent[i][k] / 100.0).epsilon(1e-12));
}

TEST_CASE("asymmetry report") {
  auto runs = prose_synergy_runs();
  runs.push_back({"rust", "python", 0.3843 * (1 - 0.0387), 0.3843});
  const auto m = compute_synergy(runs);
  const auto rep = asymmetry_report(m);
  auto has = [&](const std::string& a, const std::string& b) {
    return std::any_of(rep.begin(), rep.end(), [&](const AsymmetricPair& p) {
      return (p.language_i == a && p.language_j == b) || (p.language_i == b && p.language_j == a);
    });
  };
  CHECK(has("python", "rust"));
  CHECK(!has("python", "java"));
  for (std::size_t i = 1; i < rep.size(); ++i)
    CHECK(std::abs(rep[i - 1].delta_ij - rep[i - 1].delta_ji) >=
          std::abs(rep[i].delta_ij - rep[i].delta_ji));

  const auto sym = compute_synergy({{"go", "rust", 0.40, 0.42}, {"rust", "go", 0.40, 0.42}});
  CHECK(asymmetry_report(sym).empty());
}

TEST_CASE("property: row order does not matter and relative*baseline == delta") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto langs = gen::languages(2 + static_cast<std::size_t>(trial % 6));
    std::vector<PairedRun> runs;
    for (const auto& t : langs) {
      const double base = rng.uniform(0.2, 1.2);
      for (const auto& a : langs)
        if (t == a || rng.uniform() < 0.7)
          runs.push_back({t, a, t == a ? base : base * rng.uniform(0.8, 1.1), base});
    }
    const auto m = compute_synergy(runs);
    auto shuffled = runs;
    for (std::size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[static_cast<std::size_t>(rng.uniform() * static_cast<double>(i))]);
    const auto s = compute_synergy(shuffled);
    CHECK(s.delta() == m.delta());
    CHECK(s.relative() == m.relative());
    CHECK(s.tau() == m.tau());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (m.delta()[i][j])
          CHECK(std::abs(*m.relative()[i][j] * m.baseline_loss()[i] - *m.delta()[i][j]) <=
                1e-12 * std::max(1e-300, std::abs(*m.delta()[i][j])) + 1e-18);
  }
}

TEST_CASE("rendering") {
  const auto m = compute_synergy({{"java", "csharp", 0.718, 0.903}});
  const auto csv = synergy_to_csv(m, TauMode::relative);
  CHECK(csv.rfind("target,java,csharp\n", 0) == 0);
  const auto table = render_synergy_table(m);
  CHECK(table.find("+20.49%") != std::string::npos);
}
