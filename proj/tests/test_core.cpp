#include <doctest.h>

#include <cmath>
#include <limits>

#include "generators.hpp"
#include "slk/core.hpp"
#include "slk/error.hpp"

using namespace slk;

TEST_CASE("power law hand values") {
  // 0.71 * 1e9^-0.11 + 0.87 * 64e9^-0.25, evaluated at 40 digits offline.
  const PowerLawParams pj(0.71, 0.87, 0.11, 0.25, 0.0);
  CHECK(gen::rel_err(evaluate_power_law(pj, 1e9, 64e9), 0.07438351628700187849) < 1e-12);

  const PowerLawParams flat(0.0, 0.0, 1.0, 1.0, 0.5);
  CHECK(evaluate_power_law(flat, 1.0, 1.0) == 0.5);
  CHECK(evaluate_power_law(flat, 3e12, 7.0) == 0.5);

  const PowerLawParams zs(0.1574, 9.553, 0.3470, 0.8829, 0.1236);
  CHECK(gen::rel_err(evaluate_power_law(zs, 1.5, 16.0), 1.086421988438655474617) < 1e-12);
  CHECK(evaluate_power_law(zs, 1e300, 1e300) == doctest::Approx(0.1236).epsilon(1e-15));
}

TEST_CASE("power law terms add up") {
  const PowerLawParams p(0.5, 2.0, 0.3, 0.4, 0.6);
  const auto t = power_law_terms(p, 8.0, 27.0);
  CHECK(t.param_term == doctest::Approx(0.5 * std::pow(8.0, -0.3)));
  CHECK(t.data_term == doctest::Approx(2.0 * std::pow(27.0, -0.4)));
  CHECK(t.irreducible == 0.6);
  CHECK(t.total() == evaluate_power_law(p, 8.0, 27.0));
}

TEST_CASE("power law domain") {
  const PowerLawParams p(0.5, 2.0, 0.3, 0.4, 0.6);
  CHECK_THROWS_AS(evaluate_power_law(p, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(evaluate_power_law(p, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(evaluate_power_law(p, std::numeric_limits<double>::infinity(), 1.0),
                  DomainError);
  // n^-alpha alone underflows to 0 here; exp(log A - alpha log n) does not.
  const PowerLawParams steep(1e200, 1.0, 10.0, 1.0, 0.0);
  CHECK(power_law_terms(steep, 1e40, 1.0).param_term == doctest::Approx(1e-200));
  CHECK_THROWS_AS(evaluate_power_law(steep, 1e-30, 1.0), DomainError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(PowerLawParams(-1, 1, 0.1, 0.1, 0), ValidationError);
  CHECK_THROWS_AS(PowerLawParams(1, 1, 10.5, 0.1, 0), ValidationError);
  CHECK_THROWS_AS(PowerLawParams(1, 1, 0.1, -0.1, 0), ValidationError);
  CHECK_THROWS_AS(PowerLawParams(1, std::nan(""), 0.1, 0.1, 0), ValidationError);
  CHECK_NOTHROW(PowerLawParams(0.0508, 0.793, 6.404, 0.8829, 0.1006));
  CHECK_NOTHROW(PowerLawParams(1, 1, 10.0, 0.0, 0));
}

TEST_CASE("critical form") {
  const auto unit = convert_to_critical_form(PowerLawParams(1, 1, 0.5, 0.5, 0));
  CHECK(unit.n_c == 1.0);
  CHECK(unit.d_c == 1.0);
  CHECK(convert_to_critical_form(PowerLawParams(4, 1, 2, 1, 0)).n_c == doctest::Approx(2.0));

  // Row rust, column python: 0.56^(1/0.13), 0.81^(1/0.14), computed offline.
  const PowerLawParams rp(0.56, 0.81, 0.13, 0.14, 0.0);
  const auto c = convert_to_critical_form(rp);
  CHECK(gen::rel_err(c.n_c, 0.011560718413452617262) < 1e-12);
  CHECK(gen::rel_err(c.d_c, 0.22198394408135247885) < 1e-12);

  const auto back = from_critical_form(c);
  CHECK(back.A() == doctest::Approx(0.56).epsilon(1e-12));
  CHECK(back.B() == doctest::Approx(0.81).epsilon(1e-12));
  CHECK(evaluate_power_law(back, 2e9, 3e10) ==
        doctest::Approx(evaluate_power_law(rp, 2e9, 3e10)).epsilon(1e-12));

  CHECK_THROWS_AS(convert_to_critical_form(PowerLawParams(1, 1, 0.0, 0.5, 0)),
                  UnrepresentableError);
}

TEST_CASE("property: strictly decreasing in n and d, bounded below by L_inf") {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto p = gen::params(rng);
    const double n1 = gen::log_uniform(rng, 1e-2, 1e3);
    const double n2 = n1 * gen::log_uniform(rng, 1.01, 100.0);
    const double d = gen::log_uniform(rng, 1e-2, 1e3);
    CAPTURE(i);
    CHECK(evaluate_power_law(p, n2, d) < evaluate_power_law(p, n1, d));
    CHECK(evaluate_power_law(p, d, n2) < evaluate_power_law(p, d, n1));
    CHECK(evaluate_power_law(p, n1, d) > p.l_inf());
  }
}

TEST_CASE("property: analytic partials match central differences") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto p = gen::params(rng);
    const double n = gen::log_uniform(rng, 0.1, 100.0);
    const double d = gen::log_uniform(rng, 0.1, 100.0);
    const auto g = power_law_gradient(p, n, d);
    const double hn = 1e-4 * n, hd = 1e-4 * d;
    const double fn = (evaluate_power_law(p, n + hn, d) - evaluate_power_law(p, n - hn, d)) / (2 * hn);
    const double fd = (evaluate_power_law(p, n, d + hd) - evaluate_power_law(p, n, d - hd)) / (2 * hd);
    CAPTURE(i);
    CHECK(gen::rel_err(g.d_dn, fn) < 1e-5);
    CHECK(gen::rel_err(g.d_dd, fd) < 1e-5);
  }
}

TEST_CASE("experiment record invariants") {
  const auto tag = Tag::language("python");
  CHECK_NOTHROW(ExperimentRecord("r1", tag, 1.1e9, 16e9, 0.81));
  CHECK_THROWS_AS(ExperimentRecord("r1", tag, 1.1e9, 16e9, -0.2), ValidationError);
  CHECK_THROWS_AS(ExperimentRecord("r1", tag, 0, 16e9, 0.8), ValidationError);
  CHECK_THROWS_AS(ExperimentRecord("r1", tag, 1e9, 16e9, 0.8, -1.0), ValidationError);
  CHECK_THROWS_AS(ExperimentRecord("", tag, 1e9, 16e9, 0.8), ValidationError);
  CHECK(ExperimentRecord("r1", tag, 1e9, 1e9, 0.8).with_loss(0.5).val_loss() == 0.5);
}

TEST_CASE("tags and registry") {
  CHECK(Tag::parse("python_java").is_direction());
  CHECK(Tag::parse("python_java").source() == "python");
  CHECK(Tag::parse("python_java").target() == "java");
  CHECK(Tag::parse("go").key() == "go");
  CHECK_THROWS_AS(Tag::direction("go", "go"), ValidationError);

  auto reg = LanguageRegistry::paper_default();
  CHECK(reg.size() == 7);
  CHECK(reg.canonical("C#") == "csharp");
  CHECK(reg.canonical("JS") == "javascript");
  CHECK(reg.canonical("golang") == "go");
  CHECK_THROWS_AS(reg.canonical("cobol"), LookupError);
  reg.add("kotlin");
  CHECK(reg.contains("kotlin"));
  CHECK_THROWS_AS(reg.add("objective_c"), ValidationError);
}

TEST_CASE("synergy matrix invariants") {
  const std::vector<std::string> langs{"java", "csharp"};
  OptionalMatrix delta{{0.0, 0.185}, {std::nullopt, 0.0}};
  OptionalMatrix rel{{0.0, 0.185 / 0.903}, {std::nullopt, 0.0}};
  CHECK_NOTHROW(SynergyMatrix(langs, {0.903, 0.4}, delta, rel, zero_matrix(2)));

  auto bad_rel = rel;
  bad_rel[0][1] = 0.3;
  CHECK_THROWS_AS(SynergyMatrix(langs, {0.903, 0.4}, delta, bad_rel, zero_matrix(2)),
                  ValidationError);
  auto bad_diag = delta;
  bad_diag[1][1] = 0.1;
  CHECK_THROWS_AS(SynergyMatrix(langs, {0.903, 0.4}, bad_diag, rel, zero_matrix(2)),
                  ValidationError);
  Matrix tau{{0.1, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(SynergyMatrix(langs, {0.903, 0.4}, delta, rel, tau), ValidationError);
}

TEST_CASE("mixture spec and simplex checks") {
  const std::vector<PowerLawParams> ps{PowerLawParams(1, 1, 0.2, 0.2, 0.1),
                                       PowerLawParams(1, 1, 0.3, 0.6, 0.2)};
  CHECK_NOTHROW(MixtureSpec({0.5, 0.5}, 1.0, ps, zero_matrix(2)));
  CHECK_THROWS_AS(MixtureSpec({0.5, 0.6}, 1.0, ps, zero_matrix(2)), ValidationError);
  CHECK_THROWS_AS(MixtureSpec({1.2, -0.2}, 1.0, ps, zero_matrix(2)), ValidationError);
  CHECK_THROWS_AS(MixtureSpec({1.0}, 1.0, ps, zero_matrix(2)), ValidationError);
  CHECK_THROWS_AS(MixtureSpec({0.5, 0.5}, 1.0, ps, zero_matrix(3)), ValidationError);
  CHECK_NOTHROW(check_simplex(std::vector<double>{0.5, 0.5 + 5e-10}));
  CHECK_THROWS_AS(check_simplex(std::vector<double>{0.5, 0.5 + 5e-9}), ValidationError);
}

TEST_CASE("allocation plan invariants") {
  const MixtureTemplate m({"python", "java"},
                          {PowerLawParams(1, 1, 0.2, 0.2, 0.1), PowerLawParams(1, 1, 0.3, 0.6, 0.2)},
                          zero_matrix(2), 1.0, 1.0, 1.0);
  CHECK_NOTHROW(AllocationPlan(m, {0.3, 0.7}, {3.0, 7.0}, 1.0, 1.1, 1.0, 10.0));
  CHECK_THROWS_AS(AllocationPlan(m, {0.3, 0.7}, {3.0, 8.0}, 1.0, 1.1, 1.0, 10.0), ValidationError);
  CHECK(AllocationPlan(m, {0.3, 0.7}, {3.0, 7.0}, 1.0, 1.1, 1.0, 10.0).improvement ==
        doctest::Approx(0.1));
}
