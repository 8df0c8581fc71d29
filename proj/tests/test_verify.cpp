#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mushy/cases.hpp"
#include "mushy/synthesize.hpp"
#include "mushy/verify.hpp"
#include "support/scenario_builders.hpp"

using namespace mushy;

TEST_CASE("reference solution passes the finite-difference audit") {
  const auto desk = desk_scenario();
  const auto sol = make_similarity(desk.known, desk.coeffs);
  const auto rep = verify(sol, desk.known, desk.coeffs);
  CHECK(rep.passed);
  CHECK(rep.pde_residual_max <= rep.pde_threshold);
  CHECK(rep.cond2_max < 1e-12);  // the isotherm holds analytically
  CHECK(rep.cond3_rel <= 1e-6);
  CHECK(rep.cond4_rel <= 1e-6);
  CHECK(rep.cond6_rel <= 1e-6);
  CHECK(rep.cond7_rel <= 1e-6);
}

TEST_CASE("audit passes across a corpus of reconstructions") {
  for (int case_num = 4; case_num <= 15; ++case_num) {
    for (int trial = 0; trial < 3; ++trial) {
      SeededUniform rng(1000 * case_num + trial);
      const auto cs = sample_consistent(rng);
      const auto sol = solve_case(scenario_from(cs, static_cast<CaseId>(case_num)));
      REQUIRE(sol.kind == CaseSolution::Kind::Unique);
      const auto sim = make_similarity(cs.known, *sol.coefficients);
      const auto rep = verify(sim, cs.known, *sol.coefficients);
      CAPTURE(case_num);
      CAPTURE(trial);
      CHECK(rep.passed);
    }
  }
}

TEST_CASE("a one percent latent-heat error trips the front energy balance") {
  const auto desk = desk_scenario();
  const auto sol = make_similarity(desk.known, desk.coeffs);
  ThermalCoefficients off = desk.coeffs;
  off.l *= 1.01;
  const auto rep = verify(sol, desk.known, off);
  CHECK(!rep.passed);
  CHECK(rep.cond3_rel > 5e-3);
  CHECK(rep.cond3_rel < 2e-2);
  // The temperature field itself is untouched, so the interior residual and
  // the fixed-face conditions stay clean.
  CHECK(rep.pde_residual_max <= rep.pde_threshold);
  CHECK(rep.cond6_rel <= 1e-6);
}

TEST_CASE("grid refinement shrinks the interior residual fourfold") {
  const auto desk = desk_scenario();
  const auto sol = make_similarity(desk.known, desk.coeffs);
  GridSpec coarse;
  GridSpec fine;
  fine.nx = 2 * coarse.nx;
  fine.nt = 2 * coarse.nt;
  const auto r1 = verify(sol, desk.known, desk.coeffs, coarse);
  const auto r2 = verify(sol, desk.known, desk.coeffs, fine);
  const double factor = r1.pde_residual_max / r2.pde_residual_max;
  CHECK(factor >= 3.5);
  CHECK(factor <= 4.5);
}

TEST_CASE("degenerate grids are rejected") {
  const auto desk = desk_scenario();
  const auto sol = make_similarity(desk.known, desk.coeffs);
  GridSpec g;
  SUBCASE("too few space points") {
    g.nx = 8;
    CHECK_THROWS_AS(verify(sol, desk.known, desk.coeffs, g), bad_domain);
  }
  SUBCASE("time range touching the singular origin") {
    g.t0 = 0.0;
    CHECK_THROWS_AS(verify(sol, desk.known, desk.coeffs, g), bad_domain);
  }
  SUBCASE("inverted time range") {
    g.t0 = 2.0;
    g.t1 = 1.0;
    CHECK_THROWS_AS(verify(sol, desk.known, desk.coeffs, g), bad_domain);
  }
  SUBCASE("unsupported scheme order") {
    g.fd_order = 4;
    CHECK_THROWS_AS(verify(sol, desk.known, desk.coeffs, g), bad_domain);
  }
}

TEST_CASE("sign-change scanner reference examples") {
  SUBCASE("an increasing kernel minus a near-root constant") {
    const auto hits =
        scan_roots([](double x) { return aux_g4(x) - 0.26025; }, 1e-6, 6.0, 10000);
    REQUIRE(hits.size() == 1);
    CHECK(std::abs(0.5 * (hits[0][0] + hits[0][1]) - 0.5) < 1e-3);
  }
  SUBCASE("a strictly positive objective has no crossings") {
    const auto hits =
        scan_roots([](double x) { return aux_g4(x) + 1.0; }, 1e-6, 6.0, 10000);
    CHECK(hits.empty());
  }
  SUBCASE("the exclusion-band equation crosses twice when the peak exceeds one") {
    const auto b = builders::case4_base();
    const double gamma = builders::case4_gamma(b, 2.0);
    const KnownData kd{b.q0, 1.0, 1.0, b.sigma};
    const auto band = builders::case4_band(b, gamma, kd);
    const auto hits = scan_roots(
        [&](double x) { return aux_f4(x, kd, gamma, b.rho, b.c, b.m) - 1.0; },
        1e-6, 6.0, 10000);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0][0] <= band[0]);
    CHECK(band[0] <= hits[0][1]);
    CHECK(hits[1][0] <= band[1]);
    CHECK(band[1] <= hits[1][1]);
  }
  SUBCASE("a too-coarse partition is rejected") {
    CHECK_THROWS_AS(scan_roots([](double x) { return x; }, 0.0, 1.0, 99),
                    bad_domain);
  }
}

TEST_CASE("every xi equation shows exactly one crossing over the wide scan") {
  for (int case_num = 4; case_num <= 15; ++case_num) {
    for (int trial = 0; trial < 3; ++trial) {
      SeededUniform rng(7000 + 100 * case_num + trial);
      const auto cs = sample_consistent(rng);
      const Scenario sc = scenario_from(cs, static_cast<CaseId>(case_num));
      const auto obj = builders::xi_objective(sc);
      const auto hits = scan_roots(obj, 1e-6, 6.0, 10000);
      CAPTURE(case_num);
      CAPTURE(trial);
      REQUIRE(hits.size() == 1);
      CHECK(hits[0][0] <= cs.xi);
      CHECK(cs.xi <= hits[0][1]);
    }
  }
}

TEST_CASE("critical-point equations match their derived crossing counts") {
  SeededUniform rng(31000);
  const auto cs = sample_consistent(rng);

  SUBCASE("the decreasing-kernel extremum equations cross once") {
    for (AuxRoot which : {AuxRoot::eta5, AuxRoot::eta8, AuxRoot::eta14}) {
      const CoefficientSet& g =
          scenario_from(cs, which == AuxRoot::eta14 ? CaseId::KC
                                                    : CaseId::GammaRho)
              .given;
      const auto obj = builders::eta_objective(which, cs.known, g);
      const auto hits = scan_roots(obj, 1e-6, 6.0, 10000);
      CAPTURE(static_cast<int>(which));
      CHECK(hits.size() == 1);
    }
  }

  SUBCASE("the increasing-kernel extremum equation has a second, harmless root") {
    // Beyond the classifier window the right side plunges to minus infinity
    // exponentially while the left side is only quadratic, so the difference
    // always returns to positive: the wide scan must see exactly two
    // crossings. Uniqueness genuinely holds left of the half-root point
    // 1/sqrt(2), which is the interval the classifier uses, and the second
    // crossing sits beyond the admissible window end sqrt(ln M).
    const Scenario sc = scenario_from(cs, CaseId::EpsilonK);
    const double m = group_m(cs.known, *sc.given.rho, *sc.given.l);
    REQUIRE(m > 1.0);
    const auto obj = builders::eta_objective(AuxRoot::eta4, cs.known, sc.given);
    const auto wide = scan_roots(obj, 1e-6, 6.0, 10000);
    REQUIRE(wide.size() == 2);
    const auto eta = eta4_root(m);
    REQUIRE(eta.has_value());
    CHECK(wide[0][0] <= *eta);
    CHECK(*eta <= wide[0][1]);
    CHECK(wide[1][0] > std::sqrt(std::log(m)));
    const auto narrow =
        scan_roots(obj, 1e-6, std::numbers::sqrt2 / 2.0, 10000);
    CHECK(narrow.size() == 1);
  }
}
