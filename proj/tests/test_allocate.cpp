#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "generators.hpp"
#include "slk/allocate.hpp"
#include "slk/error.hpp"
#include "slk/fixtures.hpp"
#include "slk/oracle.hpp"

using namespace slk;

namespace {

AllocationOptions quick() {
  AllocationOptions o;
  o.starts = 16;
  return o;
}

MixtureTemplate two_languages(const PowerLawParams& a, const PowerLawParams& b, Matrix tau,
                              double gamma) {
  return MixtureTemplate({"python", "java"}, {a, b}, std::move(tau), gamma, 0.8, 5.0);
}

}  // namespace

TEST_CASE("property: projection is feasible and satisfies the optimality conditions") {
  Rng rng(71);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t k = 1 + static_cast<std::size_t>(i % 7);
    std::vector<double> v(k), lo(k), hi(k);
    for (auto& x : v) x = rng.uniform(-2.0, 2.0);
    for (std::size_t j = 0; j < k; ++j) {
      lo[j] = i % 3 == 0 ? 0.0 : rng.uniform(0.0, 0.9 / static_cast<double>(k));
      hi[j] = std::max(lo[j], rng.uniform(1.0 / static_cast<double>(k), 1.0));
    }
    if (std::accumulate(hi.begin(), hi.end(), 0.0) < 1.0) hi.assign(k, 1.0);
    const auto p = project_to_box_simplex(v, lo, hi);
    CAPTURE(i);
    CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-12);
    for (std::size_t j = 0; j < k; ++j) {
      CHECK(p[j] >= lo[j]);
      CHECK(p[j] <= hi[j]);
    }
    // p = clamp(v - lambda): every free coordinate shares one shift.
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (p[a] > lo[a] && p[b] < hi[b]) CHECK(v[a] - p[a] >= v[b] - p[b] - 1e-12);
    const auto again = project_to_box_simplex(p, lo, hi);
    for (std::size_t j = 0; j < k; ++j) CHECK(std::abs(again[j] - p[j]) <= 1e-15);
  }
}

TEST_CASE("projection fixes feasible points") {
  const std::vector<double> p{0.2, 0.3, 0.5}, lo(3, 0.0), hi(3, 1.0);
  const auto q = project_to_box_simplex(p, lo, hi);
  for (std::size_t i = 0; i < 3; ++i) CHECK(q[i] == doctest::Approx(p[i]).epsilon(1e-15));
}

TEST_CASE("constraint errors name the bound") {
  CHECK_THROWS_AS(check_constraints(3, AllocationConstraints::uniform_box(3, 0.4)), ConstraintError);
  CHECK_THROWS_AS(check_constraints(3, AllocationConstraints::uniform_box(3, 0.0, 0.3)),
                  ConstraintError);
  CHECK_THROWS_AS(check_constraints(2, {{0.1, 0.1}, {0.05, 1.0}}), ConstraintError);
  CHECK_THROWS_AS(check_constraints(2, {{0.1}, {}}), ConstraintError);
  CHECK_NOTHROW(check_constraints(7, AllocationConstraints::uniform_box(7, 1.0 / 7, 1.0 / 7)));
}

TEST_CASE("identical languages split evenly") {
  const PowerLawParams p(0.5, 2.0, 0.3, 0.4, 0.6);
  const auto m = two_languages(p, p, Matrix{{0, 0.3}, {0.3, 0}}, 1.0);
  const auto plan = optimize_proportions(1.5, 100.0, m, AllocationConstraints::uniform_box(2, 0.0));
  CHECK(plan.proportions[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(plan.improvement >= 0.0);
}

TEST_CASE("a dominating language takes everything but the floor") {
  const PowerLawParams strong(0.5, 2.0, 0.5, 0.6, 0.2), weak(0.5, 2.0, 0.2, 0.3, 0.5);
  const auto m = two_languages(strong, weak, zero_matrix(2), 0.0);
  const auto plan = optimize_proportions(1.5, 100.0, m);
  CHECK(plan.proportions[0] == doctest::Approx(1.0 - kDefaultFloor).epsilon(1e-12));
  CHECK(plan.proportions[1] == doctest::Approx(kDefaultFloor).epsilon(1e-12));
  const auto free = optimize_proportions(1.5, 100.0, m, AllocationConstraints::uniform_box(2, 0.0));
  CHECK(free.proportions == std::vector<double>{1.0, 0.0});
}

TEST_CASE("uniform-forcing constraints return uniform") {
  Rng rng(73);
  const auto m = gen::mixture(rng, 7);
  const auto plan =
      optimize_proportions(1.5, 350.0, m, AllocationConstraints::uniform_box(7, 1.0 / 7, 1.0 / 7));
  for (double p : plan.proportions) CHECK(p == doctest::Approx(1.0 / 7).epsilon(1e-12));
  CHECK(plan.improvement == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("property: matches the exhaustive grid on small K") {
  Rng rng(79);
  for (std::size_t k = 2; k <= 3; ++k)
    for (int i = 0; i < 4; ++i) {
      const auto m = gen::mixture(rng, k);
      const auto plan =
          optimize_proportions(1.5, 100.0, m, AllocationConstraints::uniform_box(k, 0.0), quick());
      const MixtureEvaluator ev(m, 1.5, 100.0);
      const auto grid = grid_search_simplex([&](std::span<const double> p) { return ev.loss(p); }, k, 200);
      CAPTURE(k);
      CAPTURE(i);
      CHECK(plan.predicted_loss - grid.best_value <= 1e-6);
    }
}

TEST_CASE("property: never worse than uniform, monotone in budget") {
  Rng rng(83);
  for (int i = 0; i < 40; ++i) {
    const std::size_t k = 2 + static_cast<std::size_t>(i % 6);
    const auto m = gen::mixture(rng, k);
    const auto plan = optimize_proportions(1.5, 50.0, m, {}, quick());
    CHECK(plan.predicted_loss <= plan.uniform_loss);
    const auto bigger = optimize_proportions(1.5, 100.0, m, {}, quick());
    CHECK(bigger.predicted_loss <= plan.predicted_loss);
    for (double p : plan.proportions) CHECK(p >= kDefaultFloor);
    CHECK(std::abs(std::accumulate(plan.proportions.begin(), plan.proportions.end(), 0.0) - 1.0) <=
          1e-12);
  }
}

TEST_CASE("property: scaling tau by c and gamma by 1/c changes nothing") {
  Rng rng(89);
  for (int i = 0; i < 10; ++i) {
    const auto m = gen::mixture(rng, 4);
    const auto base = optimize_proportions(1.5, 100.0, m, {}, quick());
    for (double c : {0.25, 0.5, 2.0, 4.0}) {
      Matrix tau = m.tau();
      for (auto& row : tau)
        for (auto& v : row) v *= c;
      const auto scaled =
          optimize_proportions(1.5, 100.0, m.with_tau(tau).with_gamma(m.gamma() / c), {}, quick());
      CHECK(scaled.predicted_loss == base.predicted_loss);
      CHECK(scaled.uniform_loss == base.uniform_loss);
      CHECK(scaled.proportions == base.proportions);
    }
  }
}

TEST_CASE("plans are deterministic") {
  Rng rng(97);
  const auto m = gen::mixture(rng, 5);
  const auto a = optimize_proportions(1.5, 100.0, m);
  AllocationOptions single;
  single.threads = 1;
  const auto b = optimize_proportions(1.5, 100.0, m, {}, single);
  CHECK(a.proportions == b.proportions);
  CHECK(a.predicted_loss == b.predicted_loss);
}

TEST_CASE("token counts") {
  const auto seven = tokens_from_proportions(std::vector<double>(7, 1.0 / 7), 350e9);
  for (double t : seven) CHECK(t == doctest::Approx(50e9).epsilon(1e-15));
  CHECK(tokens_from_proportions(std::vector<double>{0.3, 0.7}, 10.0) ==
        std::vector<double>{3.0, 7.0});
  CHECK(tokens_from_proportions(std::vector<double>{0.0, 1.0, 0.0}, 5.0) ==
        std::vector<double>{0.0, 5.0, 0.0});
  CHECK_THROWS_AS(tokens_from_proportions(std::vector<double>{0.3, 0.6}, 10.0), ValidationError);
}

TEST_CASE("compute-optimal split") {
  const PowerLawParams sym(1.0, 1.0, 0.4, 0.4, 0.1);
  const auto s = compute_optimal_split(sym, 6e20);
  CHECK(s.n_opt == doctest::Approx(1e10).epsilon(1e-12));
  CHECK(s.d_opt == doctest::Approx(1e10).epsilon(1e-12));
  const auto s2 = compute_optimal_split(sym, 12e20);
  CHECK(s2.n_opt / s.n_opt == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(s2.d_opt / s.d_opt == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

  const auto& pj = table2_params("python", "java");
  const auto c = compute_optimal_split(pj, 6e20);
  const auto g = grid_search_frontier(pj, 6e20, 6.0, 2001);
  CHECK(gen::rel_err(c.n_opt, g.n) < 1e-6);
  CHECK(gen::rel_err(c.d_opt, g.d) < 1e-6);
  CHECK(gen::rel_err(c.predicted_loss, g.loss) < 1e-6);

  CHECK_THROWS_AS(compute_optimal_split(PowerLawParams(1, 1, 0.0, 0.3, 0), 1e20),
                  DegenerateFrontierError);
  CHECK_THROWS_AS(compute_optimal_split(PowerLawParams(0, 1, 0.3, 0.3, 0), 1e20),
                  DegenerateFrontierError);
  CHECK_THROWS_AS(compute_optimal_split(sym, -1.0), ArgumentError);
}

TEST_CASE("what-if reports") {
  const PowerLawParams a(1, 1, 0.2, 0.4, 0.3), b(1, 1, 0.4, 0.2, 0.5);
  const auto m = MixtureTemplate({"python", "java"}, {a, b}, Matrix{{0, 0.2}, {0.1, 0}}, 1.0, 0.8, 5.0);
  const std::vector<double> u{0.5, 0.5};
  const auto r = whatif(u, 2.0, 100.0, m);
  CHECK(r.delta_vs_uniform == 0.0);

  // Hand arithmetic: alpha_N = 0.3, alpha_D = 0.3, L_inf = 0.4,
  // D_x = 100 * (1 + 0.25 * 0.3) = 107.5.
  CHECK(r.effective_tokens == doctest::Approx(107.5).epsilon(1e-14));
  CHECK(r.breakdown.param_term == doctest::Approx(0.8 * std::pow(2.0, -0.3)).epsilon(1e-14));
  CHECK(r.breakdown.data_term == doctest::Approx(5.0 * std::pow(107.5, -0.3)).epsilon(1e-14));
  CHECK(r.breakdown.irreducible == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(r.token_counts == std::vector<double>{50.0, 50.0});

  const auto plan = optimize_proportions(2.0, 100.0, m);
  const auto w = whatif(plan);
  CHECK(w.delta_vs_uniform <= 0.0);
  CHECK(w.predicted_loss == plan.predicted_loss);
  CHECK(render_plan_table(plan).find("python") != std::string::npos);
  CHECK_THROWS_AS(whatif(std::vector<double>{1.0}, 2.0, 100.0, m), ArgumentError);
}
