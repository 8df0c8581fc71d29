#pragma once

#include <quadmath.h>

#include <cmath>
#include <stdexcept>

/// Reference values for erf/erfc, independent of the library implementation:
/// an alternating Maclaurin sum in quad precision for |x| <= 6 (the
/// cancellation is absorbed by the 113-bit mantissa, and the alternating
/// remainder is bounded by the first omitted term), and the asymptotic tail
/// expansion beyond. Both report a certified error bound. All arithmetic,
/// including the 1 - erf complement, stays in quad until the final cast.
namespace oracle {

inline __float128 qpi() {
  static const __float128 pi = 4 * atanq(__float128(1));
  return pi;
}

struct Value {
  long double value = 0;
  long double bound = 0;  // certified |oracle - exact| bound
};

namespace detail {

struct QValue {
  __float128 value;
  __float128 bound;
};

/// erf(x) = (2/sqrt(pi)) sum_{n>=0} (-1)^n x^{2n+1} / (n! (2n+1)), 0 <= x <= 6.
inline QValue erf_maclaurin(__float128 z) {
  const __float128 z2 = z * z;
  __float128 term = z;  // x^{2n+1} / n!, alternating sign applied below
  __float128 sum = z;
  __float128 tail = 0;
  __float128 peak = fabsq(z);  // largest summand, for the rounding allowance
  int n = 1;
  for (; n <= 400; ++n) {
    term = term * z2 / n;
    const __float128 contrib = term / (2 * n + 1);
    if (fabsq(contrib) > peak) peak = fabsq(contrib);
    sum += (n % 2 == 1) ? -contrib : contrib;
    if (fabsq(contrib) < fabsq(sum) * 1e-36Q + 1e-40Q) {
      tail = fabsq(term * z2 / (n + 1) / (2 * n + 3));
      break;
    }
  }
  if (n > 400) throw std::runtime_error("erf_maclaurin: no convergence");
  const __float128 scale = 2 / sqrtq(qpi());
  const __float128 rounding = (n + 4) * __float128(2e-34) * peak;
  return {scale * sum, scale * (tail + rounding) + __float128(1e-36)};
}

/// erfc(x) = e^{-x^2}/(x sqrt(pi)) [1 + sum_{n>=1} (-1)^n (2n-1)!!/(2x^2)^n]
/// truncated at its smallest term; alternating, so the remainder is bounded
/// by the first omitted term. Sharp in relative terms for x >= 6.
inline QValue erfc_asymptotic(__float128 z) {
  const __float128 inv2z2 = 1 / (2 * z * z);
  __float128 term = 1;
  __float128 sum = 1;
  __float128 smallest = 1e30Q;
  for (int n = 1; n <= 200; ++n) {
    term = term * (2 * n - 1) * inv2z2;
    if (fabsq(term) >= smallest) break;  // divergence onset, stop before it
    smallest = fabsq(term);
    sum += (n % 2 == 1) ? -term : term;
    if (smallest < 1e-40Q) break;
  }
  const __float128 prefix = expq(-z * z) / (z * sqrtq(qpi()));
  return {prefix * sum, prefix * (smallest + __float128(1e-31))};
}

inline QValue erf_q(__float128 z) {
  if (z < 0) {
    QValue v = erf_q(-z);
    return {-v.value, v.bound};
  }
  if (z <= 6) return erf_maclaurin(z);
  QValue tail = erfc_asymptotic(z);
  return {1 - tail.value, tail.bound + __float128(1e-34)};
}

inline QValue erfc_q(__float128 z) {
  if (z >= 6) return erfc_asymptotic(z);
  QValue v = erf_q(z);
  return {1 - v.value, v.bound + __float128(1e-34)};
}

/// Casting to long double rounds to a 64-bit mantissa; account for it.
inline Value narrow(QValue q) {
  const long double value = static_cast<long double>(q.value);
  const long double cast = std::abs(value) * 1.1e-19L;
  return {value, static_cast<long double>(q.bound) + cast};
}

}  // namespace detail

inline Value erf(long double x) { return detail::narrow(detail::erf_q(x)); }
inline Value erfc(long double x) { return detail::narrow(detail::erfc_q(x)); }

}  // namespace oracle
