#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "mushy/errors.hpp"

namespace mushy {

/// Accuracy contract for the special-function kernels: every value is within
/// abs_tol + rel_tol * |exact| of the mathematical result.
struct Accuracy {
  double abs_tol = 1e-15;
  double rel_tol = 1e-14;
};

namespace detail {

inline constexpr double two_over_sqrt_pi = 2.0 * std::numbers::inv_sqrtpi;

/// Switch point between the series and the continued fraction. The series
/// carries no cancellation below it; the continued fraction converges in a
/// few dozen iterations above it.
inline constexpr double erf_switch = 2.5;

/// erf on [0, erf_switch] via the scaled Maclaurin series
///   erf(x) = (2x/sqrt(pi)) e^{-x^2} sum_{n>=0} (2x^2)^n / (1*3*...*(2n+1)).
/// All terms are positive, so the sum is cancellation free.
inline double erf_series(double x) {
  const double x2 = x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 0x1p-54) break;
  }
  return two_over_sqrt_pi * x * std::exp(-x2) * sum;
}

/// erfc for x >= erf_switch via the modified Lentz evaluation of
///   erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + (2/2)/(x + (3/2)/(...)))).
inline double erfc_fraction(double x) {
  constexpr double tiny = 1e-300;
  double c = tiny;
  double d = 0.0;
  double f = tiny;
  for (int n = 1; n <= 300; ++n) {
    const double a = (n == 1) ? 1.0 : 0.5 * (n - 1);
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 0x1p-55) break;
  }
  return std::exp(-x * x) * std::numbers::inv_sqrtpi * f;
}

}  // namespace detail

/// Error function, |result - erf(x)| <= Accuracy on the whole real line.
inline double erf(double x) {
  const double ax = std::abs(x);
  double r;
  if (ax <= detail::erf_switch) {
    r = detail::erf_series(ax);
  } else {
    r = 1.0 - detail::erfc_fraction(ax);
  }
  return x < 0.0 ? -r : r;
}

/// Complementary error function. Computed without cancellation for x > 2.5,
/// so the relative accuracy survives far into the tail.
inline double erfc(double x) {
  if (x >= detail::erf_switch) return detail::erfc_fraction(x);
  if (x <= -detail::erf_switch) return 2.0 - detail::erfc_fraction(-x);
  return 1.0 - erf(x);
}

/// e^{x^2} with an overflow guard: arguments with x^2 > 700 are rejected
/// before exp can produce inf, so callers can re-bracket or reject instead.
inline double exp_sq(double x) {
  const double x2 = x * x;
  if (!(x2 <= 700.0)) {
    throw overflow_guard("exp_sq: x^2 = " + std::to_string(x2) + " exceeds 700");
  }
  return std::exp(x2);
}

}  // namespace mushy
