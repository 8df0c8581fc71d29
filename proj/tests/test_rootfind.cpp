#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mushy/model.hpp"
#include "mushy/rootfind.hpp"
#include "mushy/specfun.hpp"
#include "mushy/synthesize.hpp"

using mushy::Monotonicity;
using mushy::RootProblem;

TEST_CASE("solve recovers the decreasing-kernel reference root") {
  RootProblem p;
  p.objective = [](double x) { return mushy::aux_g5(x); };
  p.target = 1.040999755626093;  // aux_g5(0.5)
  p.lo = 1e-8;
  p.hi = 1.0;
  p.hint = Monotonicity::Decreasing;
  const auto r = mushy::solve(p);
  CHECK(r.root == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.residual <= std::max(10 * p.tol_x * std::abs(p.target), 1e-12));
  CHECK(r.iterations <= p.max_iter);
}

TEST_CASE("expand_bracket walks out to a distant root") {
  RootProblem p;
  p.objective = [](double x) { return mushy::aux_g4(x); };
  p.target = mushy::aux_g4(2.0);
  p.lo = 1e-8;
  p.hi = 1.0;
  p.hint = Monotonicity::Increasing;
  const auto b = mushy::expand_bracket(p);
  CHECK(b.lo <= 2.0);
  CHECK(b.hi >= 2.0);
  const auto r = mushy::solve(p);
  CHECK(r.root == doctest::Approx(2.0).epsilon(1e-12));

  RootProblem far;
  far.objective = [](double x) { return x; };
  far.target = 3e7;
  far.lo = 1e-8;
  far.hi = 1.0;
  far.hint = Monotonicity::Increasing;
  const auto rb = mushy::solve(far);
  CHECK(rb.root == doctest::Approx(3e7).epsilon(1e-12));
}

TEST_CASE("expand_bracket reaches tiny roots by halving") {
  RootProblem p;
  p.objective = [](double x) { return x; };
  p.target = 1e-7;
  p.lo = 1e-2;
  p.hi = 1.0;
  p.hint = Monotonicity::Increasing;
  const auto r = mushy::solve(p);
  CHECK(r.root == doctest::Approx(1e-7).epsilon(1e-12));
}

TEST_CASE("unreachable target exhausts the expansion budget") {
  RootProblem p;
  p.objective = [](double x) { return mushy::erf(x); };
  p.target = 2.0;  // erf never exceeds 1
  p.lo = 1e-8;
  p.hi = 1.0;
  p.hint = Monotonicity::Increasing;
  CHECK_THROWS_AS(mushy::expand_bracket(p), mushy::no_bracket);
}

TEST_CASE("overflow guard freezes one end instead of failing") {
  RootProblem p;
  // exp_sq throws past x ~ 26.45. The first expansion probe (hi = 50) trips
  // the guard; the search must continue by halving lo and still succeed.
  p.objective = [](double x) { return mushy::exp_sq(x); };
  p.target = mushy::exp_sq(0.001);
  p.lo = 0.5;
  p.hi = 25.0;
  p.hint = Monotonicity::Unknown;
  const auto r = mushy::solve(p);
  CHECK(r.root == doctest::Approx(0.001).epsilon(1e-11));

  // Root unreachable below the guard: the verdict is no_bracket, not a crash.
  RootProblem far;
  far.objective = [](double x) { return mushy::exp_sq(x); };
  far.target = mushy::exp_sq(26.0);
  far.lo = 1.0;
  far.hi = 2.0;
  far.hint = Monotonicity::Increasing;
  CHECK_THROWS_AS(mushy::solve(far), mushy::no_bracket);
}

TEST_CASE("iteration cap raises max_iterations") {
  RootProblem p;
  p.objective = [](double x) { return x * x * x; };
  p.target = 0.5;
  p.lo = 1e-8;
  p.hi = 1.0;
  p.max_iter = 2;
  CHECK_THROWS_AS(mushy::solve(p), mushy::max_iterations);
}

TEST_CASE("seeded monotone families meet the residual contract") {
  // Roots stay order-one and below: with a zero target the contract floor is
  // absolute (1e-12), which a steep objective cannot meet once the root's ulp
  // spacing exceeds it, and the case corpus never puts roots out there.
  mushy::SeededUniform u(20240817u);
  for (int trial = 0; trial < 200; ++trial) {
    const double r = std::pow(10.0, u.range(-6.0, 1.0));
    RootProblem p;
    const bool curved = trial % 2 == 0;
    if (curved) {
      p.objective = [r](double x) { return std::expm1((x - r) / (1.0 + r)); };
    } else {
      const double a = 1.0 + 4.0 * u.next();
      p.objective = [r, a](double x) {
        const double d = x - r;
        return a * d + d * d * d / (1.0 + r * r);
      };
    }
    p.target = 0.0;
    p.lo = 0.5;
    p.hi = 1.0;
    p.hint = Monotonicity::Increasing;
    const auto res = mushy::solve(p);
    CAPTURE(trial);
    CAPTURE(r);
    CHECK(std::abs(res.root - r) <= 64 * p.tol_x * r + 1e-300);
    CHECK(res.residual <= std::max(10 * p.tol_x * std::abs(p.target), 1e-12));
    CHECK(res.bracket_lo <= res.root);
    CHECK(res.bracket_hi >= res.root);
  }
}
