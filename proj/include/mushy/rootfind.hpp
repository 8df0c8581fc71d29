#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "mushy/errors.hpp"

namespace mushy {

enum class Monotonicity { Increasing, Decreasing, Unknown };

/// A scalar root-finding task: find x > 0 with objective(x) = target.
struct RootProblem {
  std::function<double(double)> objective;
  double target = 0.0;
  double lo = 0.0;  ///< initial bracket guess, grown geometrically if needed
  double hi = 0.0;
  Monotonicity hint = Monotonicity::Unknown;
  double tol_x = 1e-12;  ///< relative bracket width at termination
  int max_iter = 200;
};

/// Sign-change bracket; f_lo and f_hi are objective(x) - target.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
};

struct RootResult {
  double root = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  double residual = 0.0;  ///< |objective(root) - target| at the returned root
};

/// Grows (lo, hi) multiplicatively until the shifted objective changes sign:
/// at most 60 doublings of hi and 60 halvings of lo. A monotonicity hint
/// steers which end moves; an overflow_guard from the objective freezes the
/// offending end instead of failing the whole search.
inline Bracket expand_bracket(const RootProblem& p) {
  if (!(p.lo > 0.0) || !(p.hi > p.lo)) {
    throw no_bracket("expand_bracket: need 0 < lo < hi to start");
  }
  auto eval = [&](double x) { return p.objective(x) - p.target; };

  Bracket b{p.lo, p.hi, eval(p.lo), eval(p.hi)};
  bool lo_frozen = false;
  bool hi_frozen = false;
  int lo_moves = 0;
  int hi_moves = 0;

  for (;;) {
    if (b.f_lo == 0.0 || b.f_hi == 0.0 || (b.f_lo < 0.0) != (b.f_hi < 0.0)) {
      return b;
    }
    // Both residuals share a sign; decide which end to push.
    bool grow_hi;
    const bool below = b.f_lo < 0.0;
    switch (p.hint) {
      case Monotonicity::Increasing: grow_hi = below; break;
      case Monotonicity::Decreasing: grow_hi = !below; break;
      default: grow_hi = (hi_moves <= lo_moves); break;
    }
    if (grow_hi && (hi_frozen || hi_moves >= 60)) grow_hi = false;
    if (!grow_hi && (lo_frozen || lo_moves >= 60)) {
      if (!hi_frozen && hi_moves < 60 && p.hint == Monotonicity::Unknown) {
        grow_hi = true;
      } else {
        throw no_bracket("expand_bracket: no sign change within expansion budget");
      }
    }
    const double probe = grow_hi ? b.hi * 2.0 : b.lo * 0.5;
    try {
      const double f = eval(probe);
      if (grow_hi) {
        b.hi = probe;
        b.f_hi = f;
        ++hi_moves;
      } else {
        b.lo = probe;
        b.f_lo = f;
        ++lo_moves;
      }
    } catch (const overflow_guard&) {
      (grow_hi ? hi_frozen : lo_frozen) = true;
      if (lo_frozen && hi_frozen) {
        throw no_bracket("expand_bracket: overflow guard on both ends");
      }
    }
  }
}

/// Safeguarded bracketing solve: a secant proposal is accepted only if it
/// stays strictly inside the bracket, and a bisection step is forced whenever
/// two consecutive accepted steps fail to halve the bracket, so convergence
/// is never worse than bisection. The returned root is the best of the final
/// interpolant and the bracket ends, measured by residual.
inline RootResult solve(const RootProblem& p) {
  Bracket b = expand_bracket(p);
  auto eval = [&](double x) { return p.objective(x) - p.target; };

  RootResult out;
  out.bracket_lo = b.lo;
  out.bracket_hi = b.hi;
  if (b.f_lo == 0.0) {
    out.root = b.lo;
    return out;
  }
  if (b.f_hi == 0.0) {
    out.root = b.hi;
    return out;
  }

  double width_before_last = b.hi - b.lo;
  int it = 0;
  for (; it < p.max_iter; ++it) {
    const double mid = 0.5 * (b.lo + b.hi);
    const double tol = p.tol_x * std::abs(mid) + 1e-307;
    const double width = b.hi - b.lo;
    if (width <= 2.0 * tol) break;

    double cand = mid;
    if (b.f_hi != b.f_lo) {
      const double secant =
          (b.lo * b.f_hi - b.hi * b.f_lo) / (b.f_hi - b.f_lo);
      const bool inside = secant > b.lo + 0.01 * tol && secant < b.hi - 0.01 * tol;
      const bool shrinking = width <= 0.5 * width_before_last;
      if (inside && (shrinking || it < 2)) cand = secant;
    }
    width_before_last = (it >= 1) ? width : width_before_last;

    const double fc = eval(cand);
    if (fc == 0.0) {
      out.root = cand;
      out.bracket_lo = b.lo;
      out.bracket_hi = b.hi;
      out.iterations = it + 1;
      return out;
    }
    if ((fc < 0.0) == (b.f_lo < 0.0)) {
      b.lo = cand;
      b.f_lo = fc;
    } else {
      b.hi = cand;
      b.f_hi = fc;
    }
  }
  if (it >= p.max_iter) {
    throw max_iterations("solve: bracket failed to converge in " +
                         std::to_string(p.max_iter) + " iterations");
  }

  double root = 0.5 * (b.lo + b.hi);
  if (b.f_hi != b.f_lo) {
    const double secant = (b.lo * b.f_hi - b.hi * b.f_lo) / (b.f_hi - b.f_lo);
    if (secant >= b.lo && secant <= b.hi) root = secant;
  }
  double best_res = std::abs(eval(root));
  if (std::abs(b.f_lo) < best_res) {
    root = b.lo;
    best_res = std::abs(b.f_lo);
  }
  if (std::abs(b.f_hi) < best_res) {
    root = b.hi;
    best_res = std::abs(b.f_hi);
  }
  out.root = root;
  out.bracket_lo = b.lo;
  out.bracket_hi = b.hi;
  out.iterations = it;
  out.residual = best_res;
  return out;
}

}  // namespace mushy
