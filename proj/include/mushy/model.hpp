#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "mushy/errors.hpp"
#include "mushy/specfun.hpp"

namespace mushy {

/// Measured data of a solidification run: surface heat flux coefficient q0
/// (flux is q0/sqrt(t)), convective transfer coefficient h0, bulk liquid
/// excess temperature D_inf, and the observed front coefficient sigma in
/// s(t) = 2 sigma sqrt(t). All positive.
struct KnownData {
  double q0 = 0.0;
  double h0 = 0.0;
  double D_inf = 0.0;
  double sigma = 0.0;

  bool valid() const { return q0 > 0.0 && h0 > 0.0 && D_inf > 0.0 && sigma > 0.0; }
};

/// Full material description: latent heat l, conductivity k, density rho,
/// specific heat c, solid fraction weight epsilon in (0, 1), and the mushy
/// zone constant gamma.
struct ThermalCoefficients {
  double l = 0.0;
  double k = 0.0;
  double rho = 0.0;
  double c = 0.0;
  double epsilon = 0.0;
  double gamma = 0.0;

  bool valid() const {
    return l > 0.0 && k > 0.0 && rho > 0.0 && c > 0.0 && gamma > 0.0 &&
           epsilon > 0.0 && epsilon < 1.0;
  }
};

/// A possibly partial set of coefficients; scenarios carry the four given
/// ones and solvers fill in the unknown pair.
struct CoefficientSet {
  std::optional<double> l, k, rho, c, epsilon, gamma;

  double require(const std::optional<double>& v, const char* name) const {
    if (!v) throw missing_parameter(std::string("missing coefficient: ") + name);
    return *v;
  }
  double req_l() const { return require(l, "l"); }
  double req_k() const { return require(k, "k"); }
  double req_rho() const { return require(rho, "rho"); }
  double req_c() const { return require(c, "c"); }
  double req_epsilon() const { return require(epsilon, "epsilon"); }
  double req_gamma() const { return require(gamma, "gamma"); }

  int count() const {
    return int(l.has_value()) + int(k.has_value()) + int(rho.has_value()) +
           int(c.has_value()) + int(epsilon.has_value()) + int(gamma.has_value());
  }
};

inline CoefficientSet to_set(const ThermalCoefficients& tc) {
  return {tc.l, tc.k, tc.rho, tc.c, tc.epsilon, tc.gamma};
}

/// Similarity form of the temperature in the solid region:
///   T(x, t) = coef_a + coef_b erf(x / (2 sqrt(alpha t))),
/// with fronts s(t) = 2 xi sqrt(alpha t) and r(t) = 2 mu sqrt(alpha t).
struct SimilaritySolution {
  double coef_a = 0.0;
  double coef_b = 0.0;
  double mu = 0.0;
  double alpha = 0.0;
  double xi = 0.0;
};

inline double sqrt_pi() { return std::sqrt(std::numbers::pi); }

inline double alpha_of(double k, double rho, double c) { return k / (rho * c); }

inline double xi_of(const KnownData& kd, double alpha) {
  return kd.sigma / std::sqrt(alpha);
}

/// Builds the similarity solution for a full coefficient set. The closed
/// forms pin coef_b by the surface flux, coef_a by the zero isotherm at
/// s(t), and mu by the mushy-zone width condition.
inline SimilaritySolution make_similarity(const KnownData& kd,
                                          const ThermalCoefficients& tc) {
  SimilaritySolution s;
  s.alpha = alpha_of(tc.k, tc.rho, tc.c);
  s.xi = xi_of(kd, s.alpha);
  s.coef_b = kd.q0 * std::sqrt(s.alpha * std::numbers::pi) / tc.k;
  s.coef_a = -s.coef_b * erf(s.xi);
  s.mu = tc.gamma * tc.k * exp_sq(s.xi) / (2.0 * kd.q0 * std::sqrt(s.alpha)) + s.xi;
  return s;
}

/// Solid-liquid interface position s(t) = 2 sigma sqrt(t).
inline double front_s(const KnownData& kd, double t) {
  if (!(t > 0.0)) throw bad_domain("front_s: t must be positive");
  return 2.0 * kd.sigma * std::sqrt(t);
}

/// Mushy-liquid interface position r(t) = 2 mu sqrt(alpha t).
inline double front_r(const SimilaritySolution& s, double t) {
  if (!(t > 0.0)) throw bad_domain("front_r: t must be positive");
  return 2.0 * s.mu * std::sqrt(s.alpha * t);
}

/// Temperature in the solid region, defined for t > 0 and 0 <= x <= s(t)
/// (a hair of relative slack at the front absorbs rounding in s(t)).
inline double temperature(const SimilaritySolution& s, const KnownData& kd,
                          double x, double t) {
  if (!(t > 0.0)) throw bad_domain("temperature: t must be positive");
  const double st = front_s(kd, t);
  if (x < 0.0 || x > st * (1.0 + 1e-12)) {
    throw bad_domain("temperature: x outside [0, s(t)]");
  }
  return s.coef_a + s.coef_b * erf(x / (2.0 * std::sqrt(s.alpha * t)));
}

/// Energy-balance consistency residual at the solidification front,
/// (lhs - rhs) / rhs with lhs = q0/(rho l) and rhs the front term; the rhs
/// normalizer is free of l, so perturbing l moves the residual proportionally.
/// Zero exactly when the first consistency equation holds.
inline double residual_eq1(const KnownData& kd, const ThermalCoefficients& tc) {
  const double alpha = alpha_of(tc.k, tc.rho, tc.c);
  const double e = exp_sq(xi_of(kd, alpha));
  const double lhs = kd.q0 / (tc.rho * tc.l);
  const double rhs =
      (kd.sigma + tc.gamma * tc.k * (1.0 - tc.epsilon) * e / (2.0 * kd.q0)) * e;
  return (lhs - rhs) / rhs;
}

/// Convective-boundary consistency residual, erf(xi) minus its data-side
/// expression. Zero exactly when the second consistency equation holds.
inline double residual_eq2(const KnownData& kd, const ThermalCoefficients& tc) {
  const double alpha = alpha_of(tc.k, tc.rho, tc.c);
  const double xi = xi_of(kd, alpha);
  const double w = 1.0 - kd.q0 / (kd.h0 * kd.D_inf);
  return erf(xi) - tc.k * kd.D_inf * w /
                       (kd.q0 * std::sqrt(alpha * std::numbers::pi));
}

// Dimensionless groupings shared by the per-case analysis. Each helper takes
// exactly the data it depends on; the aux() dispatcher wires scenarios in.

/// W = 1 - q0/(h0 D_inf); positive exactly when convection can remove the
/// incoming flux.
inline double group_w(const KnownData& kd) {
  return 1.0 - kd.q0 / (kd.h0 * kd.D_inf);
}

/// M = q0/(rho l sigma).
inline double group_m(const KnownData& kd, double rho, double l) {
  return kd.q0 / (rho * l * kd.sigma);
}

/// K = q0 c sigma / (l k).
inline double group_k(const KnownData& kd, double c, double l, double k) {
  return kd.q0 * c * kd.sigma / (l * k);
}

/// Q = 2 q0 sigma / (gamma k).
inline double group_q(const KnownData& kd, double gamma, double k) {
  return 2.0 * kd.q0 * kd.sigma / (gamma * k);
}

// Auxiliary scalar kernels of the fifteen-case analysis. The pure ones take
// only x; the data-dependent ones take their dimensionless constants.

inline double aux_g4(double x) { return x * erf(x); }

/// erf(x)/x extended by its limit 2/sqrt(pi) at the origin.
inline double aux_g5(double x) {
  if (x < 1e-8) return detail::two_over_sqrt_pi * (1.0 - x * x / 3.0);
  return erf(x) / x;
}

inline double aux_g13(double x) { return std::exp(-x * x) / erf(x); }

inline double aux_h13(double x, double b13) {
  return x + b13 * exp_sq(x) * erf(x);
}

inline double aux_g14(double x, double m) {
  return (m * std::exp(-x * x) - 1.0) * x;
}

inline double aux_h14(double x) { return erf(x) * exp_sq(x); }

/// f4(x) = (2 q0 / (gamma rho c sigma)) (M e^{-x^2} - 1) x^2 e^{-x^2}.
inline double aux_f4(double x, const KnownData& kd, double gamma, double rho,
                     double c, double m) {
  const double e = std::exp(-x * x);
  return 2.0 * kd.q0 / (gamma * rho * c * kd.sigma) * (m * e - 1.0) * x * x * e;
}

/// f5(x) = (2 q0 sigma / (gamma k)) (K e^{-x^2} / x^2 - 1) e^{-x^2}.
inline double aux_f5(double x, const KnownData& kd, double gamma, double k,
                     double kk) {
  const double e = std::exp(-x * x);
  return 2.0 * kd.q0 * kd.sigma / (gamma * k) * (kk * e / (x * x) - 1.0) * e;
}

/// f6(x) = Q (M e^{-x^2} - 1) e^{-x^2}.
inline double aux_f6(double x, double q, double m) {
  const double e = std::exp(-x * x);
  return q * (m * e - 1.0) * e;
}

enum class AuxFn { f4, g4, f5, g5, f6, g13, h13, g14, h14 };

/// Dimensionless constants derivable from a scenario's data. Each field is
/// present only when the coefficients it depends on are, and the log-domain
/// ones additionally require M > 1.
struct AuxConstants {
  std::optional<double> W, M, K, Q, lnM, a13, b13, c13, a14, nu4, nu6;
};

inline AuxConstants aux_constants(const KnownData& kd, const CoefficientSet& g) {
  AuxConstants ac;
  const double w = group_w(kd);
  ac.W = w;
  ac.c13 = 2.0 * w;
  if (g.rho && g.l) {
    ac.M = group_m(kd, *g.rho, *g.l);
    if (*ac.M > 1.0) ac.lnM = std::log(*ac.M);
  }
  if (g.c && g.l && g.k) ac.K = group_k(kd, *g.c, *g.l, *g.k);
  if (g.gamma && g.k) ac.Q = group_q(kd, *g.gamma, *g.k);
  if (g.c && g.l) ac.a13 = 2.0 * *g.c * kd.D_inf * w * w / (*g.l * sqrt_pi());
  if (g.gamma && g.epsilon && w > 0.0) {
    ac.b13 = *g.gamma * sqrt_pi() * (1.0 - *g.epsilon) / (2.0 * kd.D_inf * w);
  }
  if (g.gamma && g.epsilon) {
    ac.a14 = 2.0 * kd.D_inf * w / (*g.gamma * sqrt_pi() * (1.0 - *g.epsilon));
  }
  // nu4 is the positive root of the sufficiency quadratic
  // a4 y^2 - b4 y - 1 with a4 = M b4, b4 = (2 q0 ln M)/(rho sigma gamma c).
  if (g.rho && g.l && g.gamma && g.c && ac.lnM) {
    const double pref = *g.rho * *g.l * kd.sigma / (2.0 * kd.q0);
    ac.nu4 = pref * (1.0 + std::sqrt(1.0 + 2.0 * *g.gamma * *g.c /
                                               (*g.l * *ac.lnM)));
  }
  if (g.rho && g.l && g.gamma && g.k) {
    const double pref = *g.rho * *g.l * kd.sigma / (2.0 * kd.q0);
    ac.nu6 = pref * (1.0 + std::sqrt(1.0 + 2.0 * *g.gamma * *g.k /
                                               (kd.sigma * kd.sigma * *g.rho * *g.l)));
  }
  return ac;
}

/// Evaluates one auxiliary kernel at x, pulling the constants it needs from
/// the given coefficients. Missing dependencies raise missing_parameter.
inline double aux(AuxFn fn, double x, const KnownData& kd,
                  const CoefficientSet& g) {
  switch (fn) {
    case AuxFn::g4: return aux_g4(x);
    case AuxFn::g5: return aux_g5(x);
    case AuxFn::g13: return aux_g13(x);
    case AuxFn::h14: return aux_h14(x);
    case AuxFn::f4:
      return aux_f4(x, kd, g.req_gamma(), g.req_rho(), g.req_c(),
                    group_m(kd, g.req_rho(), g.req_l()));
    case AuxFn::f5:
      return aux_f5(x, kd, g.req_gamma(), g.req_k(),
                    group_k(kd, g.req_c(), g.req_l(), g.req_k()));
    case AuxFn::f6:
      return aux_f6(x, group_q(kd, g.req_gamma(), g.req_k()),
                    group_m(kd, g.req_rho(), g.req_l()));
    case AuxFn::h13: {
      const double w = group_w(kd);
      if (!(w > 0.0)) throw bad_domain("aux h13: needs W > 0");
      const double b13 =
          g.req_gamma() * sqrt_pi() * (1.0 - g.req_epsilon()) / (2.0 * kd.D_inf * w);
      return aux_h13(x, b13);
    }
    case AuxFn::g14:
      return aux_g14(x, group_m(kd, g.req_rho(), g.req_l()));
  }
  throw bad_domain("aux: unknown kernel");
}

}  // namespace mushy
