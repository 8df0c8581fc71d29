#pragma once

#include <cstdint>
#include <random>

#include "mushy/model.hpp"
#include "mushy/specfun.hpp"

namespace mushy {

/// Deterministic uniform stream: mt19937_64 output bits mapped to [0, 1)
/// directly, so a seeded corpus is byte-reproducible across standard
/// libraries (the standard distributions are implementation-defined).
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) : gen_(seed) {}
  double next() { return (gen_() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 gen_;
};

/// A materially consistent data set built forward from a chosen similarity
/// ratio xi and five material constants. Both consistency equations are
/// solved in closed form for the remaining degrees of freedom (l enters
/// linearly through 1/l, h0 through 1/h0), so no root finding is involved
/// and the residuals vanish to rounding. Serves as the independent ground
/// truth for recovery tests.
struct ConstructedScenario {
  KnownData known;
  ThermalCoefficients coeffs;
  double xi = 0.0;
};

/// w_margin > 1 places W = 1 - q0/(h0 D_inf) at 1/w_margin, which keeps h0
/// positive and the convective condition solvable.
inline ConstructedScenario construct_consistent(double q0, double k, double rho,
                                                double c, double epsilon,
                                                double gamma, double xi,
                                                double w_margin) {
  ConstructedScenario out;
  const double alpha = alpha_of(k, rho, c);
  const double sigma = xi * std::sqrt(alpha);
  const double e = exp_sq(xi);
  const double l =
      q0 / (e * rho * (sigma + gamma * k * (1.0 - epsilon) * e / (2.0 * q0)));
  const double d_inf = w_margin * erf(xi) * q0 * sigma * sqrt_pi() / (k * xi);
  const double w = 1.0 / w_margin;
  const double h0 = q0 / (d_inf * (1.0 - w));
  out.known = {q0, h0, d_inf, sigma};
  out.coeffs = {l, k, rho, c, epsilon, gamma};
  out.xi = xi;
  return out;
}

/// Default sampling box for recovery corpora. The ranges keep xi well inside
/// (0, 6), every coefficient positive and order-one, and W in (0.25, 0.84).
inline ConstructedScenario sample_consistent(SeededUniform& u) {
  const double q0 = u.range(0.5, 2.0);
  const double k = u.range(0.5, 2.0);
  const double rho = u.range(0.5, 2.0);
  const double c = u.range(0.5, 2.0);
  const double epsilon = u.range(0.05, 0.95);
  const double gamma = u.range(0.02, 0.5);
  const double xi = u.range(0.25, 1.25);
  const double margin = u.range(1.2, 4.0);
  return construct_consistent(q0, k, rho, c, epsilon, gamma, xi, margin);
}

/// The worked reference scenario used across the test suite: unit material
/// constants, sigma = 1/2 (so xi = 1/2), gamma = 0.1, epsilon = 0.5, and
/// D_inf pinned at 2 with h0 from the convective condition.
inline ConstructedScenario desk_scenario() {
  ConstructedScenario out;
  const double q0 = 1.0, k = 1.0, rho = 1.0, c = 1.0;
  const double epsilon = 0.5, gamma = 0.1;
  const double sigma = 0.5, d_inf = 2.0;
  const double xi = 0.5;
  const double e = exp_sq(xi);
  const double l =
      q0 / (e * rho * (sigma + gamma * k * (1.0 - epsilon) * e / (2.0 * q0)));
  const double w = erf(xi) * q0 * std::sqrt(std::numbers::pi) / (k * d_inf);
  const double h0 = q0 / (d_inf * (1.0 - w));
  out.known = {q0, h0, d_inf, sigma};
  out.coeffs = {l, k, rho, c, epsilon, gamma};
  out.xi = xi;
  return out;
}

}  // namespace mushy
