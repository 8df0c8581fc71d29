#pragma once

// Independent verification of a reconstructed similarity solution against the
// full overdetermined free-boundary system, plus a brute-force sign-change
// scanner used to audit every root-uniqueness claim the solver relies on.
//
// The verifier deliberately shares no formula code with the forward model: it
// rebuilds the temperature field from the four similarity constants and
// differentiates it numerically, so an algebra slip in the model or the
// recovery formulas cannot cancel out of this check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "mushy/errors.hpp"
#include "mushy/model.hpp"

namespace mushy {

/// Space-time sampling for the finite-difference verification. The time range
/// starts away from zero because the similarity solution is singular there;
/// the default window still exercises the sqrt(t) scaling end to end.
struct GridSpec {
  int nx = 400;
  int nt = 400;
  double t0 = 1.0;
  double t1 = 2.0;
  int fd_order = 2;  // the centred interior scheme; no other order is offered
};

/// Residual thresholds the verdict is measured against. The interior constant
/// is calibrated once against the corpus (see test suite) so that the bound
/// C (dx^2 + dt^2) holds with a factor-of-several margin while still shrinking
/// fourfold under 2x refinement.
struct VerificationThresholds {
  double pde_c = 1.0;
  double boundary_rel = 1e-6;
};

struct VerificationReport {
  double pde_residual_max = 0.0;  // scaled by rho c |A| / t0
  double cond2_max = 0.0;         // zero isotherm at the near front, per |A|
  double cond3_rel = 0.0;         // energy balance at the near front
  double cond4_rel = 0.0;         // mushy-width relation at the near front
  double cond6_rel = 0.0;         // prescribed flux at the fixed face
  double cond7_rel = 0.0;         // convective exchange at the fixed face
  double pde_threshold = 0.0;     // C (dx^2 + dt^2) actually enforced
  bool passed = false;
};

/// Finite-difference audit of a reconstructed solution.
///
/// The interior residual rho c T_t - k T_xx uses centred second-order
/// stencils on the strip 0 < x < s(t) and is normalized by rho c |A| / t0.
/// The front and fixed-face conditions use one-sided differences for T_x with
/// the analytic front velocities sigma/sqrt(t) and mu sqrt(alpha)/sqrt(t);
/// the one-sided stencils carry one extra point so their truncation error
/// stays far below the 1e-6 relative threshold at the default grid across
/// the whole sampling corpus. The inner front's start at the origin holds
/// identically (both fronts are proportional to sqrt(t)), so it needs no
/// sampled check.
inline VerificationReport verify(const SimilaritySolution& sol,
                                 const KnownData& known,
                                 const ThermalCoefficients& coeffs,
                                 const GridSpec& grid = {},
                                 const VerificationThresholds& thr = {}) {
  if (grid.nx < 16 || grid.nt < 16) {
    throw bad_domain("verify: grid must have nx, nt >= 16");
  }
  if (!(grid.t0 > 0.0) || !(grid.t1 > grid.t0)) {
    throw bad_domain("verify: need 0 < t0 < t1");
  }
  if (grid.fd_order != 2) {
    throw bad_domain("verify: only the second-order scheme exists");
  }

  const double a = sol.coef_a;
  const double b = sol.coef_b;
  const double alpha = sol.alpha;
  auto temp = [a, b, alpha](double x, double t) {
    return a + b * erf(x / (2.0 * std::sqrt(alpha * t)));
  };
  auto s_front = [&known](double t) { return 2.0 * known.sigma * std::sqrt(t); };
  auto r_front = [&sol, alpha](double t) {
    return 2.0 * sol.mu * std::sqrt(alpha * t);
  };
  auto s_dot = [&known](double t) { return known.sigma / std::sqrt(t); };
  auto r_dot = [&sol, alpha](double t) {
    return sol.mu * std::sqrt(alpha) / std::sqrt(t);
  };

  VerificationReport rep;
  const double dt = (grid.t1 - grid.t0) / grid.nt;
  const double pde_scale = coeffs.rho * coeffs.c * std::abs(a) / grid.t0;

  // Interior heat-equation residual on rows of the time grid whose centred
  // time stencil stays inside the window. The x step follows the front, so
  // every row covers the full strip.
  std::vector<double> row(static_cast<std::size_t>(grid.nx) + 1);
  for (int j = 1; j < grid.nt; ++j) {
    const double t = grid.t0 + j * dt;
    const double dx = s_front(t) / grid.nx;
    for (int i = 0; i <= grid.nx; ++i) row[static_cast<std::size_t>(i)] = temp(i * dx, t);
    for (int i = 1; i < grid.nx; ++i) {
      const double x = i * dx;
      const double t_t = (temp(x, t + dt) - temp(x, t - dt)) / (2.0 * dt);
      const double t_xx = (row[static_cast<std::size_t>(i) + 1] -
                           2.0 * row[static_cast<std::size_t>(i)] +
                           row[static_cast<std::size_t>(i) - 1]) /
                          (dx * dx);
      const double res = coeffs.rho * coeffs.c * t_t - coeffs.k * t_xx;
      rep.pde_residual_max =
          std::max(rep.pde_residual_max, std::abs(res) / pde_scale);
    }
  }

  // Front and fixed-face conditions on every time-grid node.
  for (int j = 0; j <= grid.nt; ++j) {
    const double t = grid.t0 + j * dt;
    const double s = s_front(t);
    const double h = s / grid.nx;
    const double tx_s = (11.0 * temp(s, t) - 18.0 * temp(s - h, t) +
                         9.0 * temp(s - 2.0 * h, t) - 2.0 * temp(s - 3.0 * h, t)) /
                        (6.0 * h);
    const double tx_0 = (-11.0 * temp(0.0, t) + 18.0 * temp(h, t) -
                         9.0 * temp(2.0 * h, t) + 2.0 * temp(3.0 * h, t)) /
                        (6.0 * h);

    rep.cond2_max =
        std::max(rep.cond2_max, std::abs(temp(s, t)) / std::abs(a));

    const double balance = coeffs.rho * coeffs.l *
                           (coeffs.epsilon * s_dot(t) +
                            (1.0 - coeffs.epsilon) * r_dot(t));
    rep.cond3_rel = std::max(
        rep.cond3_rel, std::abs(coeffs.k * tx_s - balance) / std::abs(balance));

    rep.cond4_rel = std::max(
        rep.cond4_rel,
        std::abs(tx_s * (r_front(t) - s) - coeffs.gamma) / coeffs.gamma);

    const double flux = known.q0 / std::sqrt(t);
    rep.cond6_rel =
        std::max(rep.cond6_rel, std::abs(coeffs.k * tx_0 - flux) / flux);

    const double convective =
        known.h0 / std::sqrt(t) * (temp(0.0, t) + known.D_inf);
    rep.cond7_rel = std::max(
        rep.cond7_rel,
        std::abs(coeffs.k * tx_0 - convective) / std::abs(convective));
  }

  const double dx_max = s_front(grid.t1) / grid.nx;
  rep.pde_threshold = thr.pde_c * (dx_max * dx_max + dt * dt);
  rep.passed = rep.pde_residual_max <= rep.pde_threshold &&
               rep.cond2_max <= thr.boundary_rel &&
               rep.cond3_rel <= thr.boundary_rel &&
               rep.cond4_rel <= thr.boundary_rel &&
               rep.cond6_rel <= thr.boundary_rel &&
               rep.cond7_rel <= thr.boundary_rel;
  return rep;
}

/// Brute-force root audit: walks the uniform n-partition of [lo, hi] and
/// returns every subinterval across which the objective changes sign. Used to
/// certify "this equation has exactly N positive solutions" claims without
/// trusting the bracketing logic under audit.
template <class F>
std::vector<std::array<double, 2>> scan_roots(F&& objective, double lo,
                                              double hi, int n) {
  if (n < 100) throw bad_domain("scan_roots: need n >= 100");
  if (!(hi > lo)) throw bad_domain("scan_roots: need lo < hi");
  std::vector<std::array<double, 2>> out;
  const double h = (hi - lo) / n;
  double x_prev = lo;
  double f_prev = objective(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = (i == n) ? hi : lo + i * h;
    const double f = objective(x);
    const bool change = (f_prev < 0.0 && f > 0.0) ||
                        (f_prev > 0.0 && f < 0.0) ||
                        (f_prev == 0.0 && f != 0.0);
    if (change) out.push_back({x_prev, x});
    x_prev = x;
    f_prev = f;
  }
  return out;
}

}  // namespace mushy
