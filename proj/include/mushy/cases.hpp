#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mushy/errors.hpp"
#include "mushy/model.hpp"
#include "mushy/rootfind.hpp"
#include "mushy/specfun.hpp"
#include "mushy/synthesize.hpp"

namespace mushy {

/// The fifteen determination cases, numbered by their unknown pair.
enum class CaseId : int {
  EpsilonGamma = 1,
  EpsilonL = 2,
  GammaL = 3,
  EpsilonK = 4,
  EpsilonRho = 5,
  EpsilonC = 6,
  GammaK = 7,
  GammaRho = 8,
  GammaC = 9,
  LK = 10,
  LRho = 11,
  LC = 12,
  KRho = 13,
  KC = 14,
  RhoC = 15,
};

enum class Coefficient { l, k, rho, c, epsilon, gamma };

inline const char* coefficient_name(Coefficient f) {
  switch (f) {
    case Coefficient::l: return "l";
    case Coefficient::k: return "k";
    case Coefficient::rho: return "rho";
    case Coefficient::c: return "c";
    case Coefficient::epsilon: return "epsilon";
    case Coefficient::gamma: return "gamma";
  }
  return "?";
}

inline std::array<Coefficient, 2> unknown_pair(CaseId id) {
  using C = Coefficient;
  switch (id) {
    case CaseId::EpsilonGamma: return {C::epsilon, C::gamma};
    case CaseId::EpsilonL: return {C::epsilon, C::l};
    case CaseId::GammaL: return {C::gamma, C::l};
    case CaseId::EpsilonK: return {C::epsilon, C::k};
    case CaseId::EpsilonRho: return {C::epsilon, C::rho};
    case CaseId::EpsilonC: return {C::epsilon, C::c};
    case CaseId::GammaK: return {C::gamma, C::k};
    case CaseId::GammaRho: return {C::gamma, C::rho};
    case CaseId::GammaC: return {C::gamma, C::c};
    case CaseId::LK: return {C::l, C::k};
    case CaseId::LRho: return {C::l, C::rho};
    case CaseId::LC: return {C::l, C::c};
    case CaseId::KRho: return {C::k, C::rho};
    case CaseId::KC: return {C::k, C::c};
    case CaseId::RhoC: return {C::rho, C::c};
  }
  throw bad_domain("unknown_pair: invalid case id");
}

inline std::optional<CaseId> case_from_pair(std::string_view a, std::string_view b) {
  for (int i = 1; i <= 15; ++i) {
    const auto id = static_cast<CaseId>(i);
    const auto p = unknown_pair(id);
    const std::string_view n0 = coefficient_name(p[0]);
    const std::string_view n1 = coefficient_name(p[1]);
    if ((a == n0 && b == n1) || (a == n1 && b == n0)) return id;
  }
  return std::nullopt;
}

/// One determination task: the case, the measured data, and the four given
/// coefficients (the unknown pair must be absent).
struct Scenario {
  CaseId case_id = CaseId::EpsilonGamma;
  KnownData known;
  CoefficientSet given;
};

inline std::optional<double>& field_of(CoefficientSet& s, Coefficient f) {
  switch (f) {
    case Coefficient::l: return s.l;
    case Coefficient::k: return s.k;
    case Coefficient::rho: return s.rho;
    case Coefficient::c: return s.c;
    case Coefficient::epsilon: return s.epsilon;
    case Coefficient::gamma: return s.gamma;
  }
  throw bad_domain("field_of: invalid coefficient");
}

inline double field_of(const ThermalCoefficients& tc, Coefficient f) {
  switch (f) {
    case Coefficient::l: return tc.l;
    case Coefficient::k: return tc.k;
    case Coefficient::rho: return tc.rho;
    case Coefficient::c: return tc.c;
    case Coefficient::epsilon: return tc.epsilon;
    case Coefficient::gamma: return tc.gamma;
  }
  throw bad_domain("field_of: invalid coefficient");
}

/// Builds the scenario that hides a constructed set's unknown pair.
inline Scenario scenario_from(const ConstructedScenario& cs, CaseId id) {
  Scenario sc;
  sc.case_id = id;
  sc.known = cs.known;
  sc.given = to_set(cs.coeffs);
  for (Coefficient f : unknown_pair(id)) field_of(sc.given, f).reset();
  return sc;
}

/// Structural validation: data positive, exactly the four complementary
/// coefficients given, all of them positive (epsilon inside (0, 1)).
inline void validate_scenario(const Scenario& sc) {
  if (!sc.known.valid()) {
    throw bad_domain("scenario: known data must be positive");
  }
  const auto pair = unknown_pair(sc.case_id);
  CoefficientSet g = sc.given;
  for (Coefficient f : pair) {
    if (field_of(g, f)) {
      throw bad_domain(std::string("scenario: unknown coefficient '") +
                       coefficient_name(f) + "' must not be given");
    }
  }
  if (sc.given.count() != 4) {
    throw missing_parameter("scenario: exactly four coefficients must be given");
  }
  auto check_pos = [](const std::optional<double>& v, const char* name) {
    if (v && !(*v > 0.0)) {
      throw bad_domain(std::string("scenario: coefficient '") + name +
                       "' must be positive");
    }
  };
  check_pos(sc.given.l, "l");
  check_pos(sc.given.k, "k");
  check_pos(sc.given.rho, "rho");
  check_pos(sc.given.c, "c");
  check_pos(sc.given.gamma, "gamma");
  if (sc.given.epsilon && !(*sc.given.epsilon > 0.0 && *sc.given.epsilon < 1.0)) {
    throw bad_domain("scenario: coefficient 'epsilon' must lie in (0, 1)");
  }
}

struct SolveTolerances {
  double root_tol = 1e-12;       ///< relative x tolerance of the xi solve
  double residual_tol = 1e-10;   ///< consistency residual acceptance
  double grey_zone = 1e-9;       ///< |margin| below this flags a boundary
  double trichotomy_tol = 1e-9;  ///< equality band of the case-4 group split
};

struct RestrictionEntry {
  std::string id;
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  bool satisfied = false;
  double margin = std::numeric_limits<double>::quiet_NaN();
  std::string note;
};

struct RestrictionReport {
  std::vector<RestrictionEntry> entries;
  std::optional<int> active_group;  ///< cases 4 and 6: the condition group in force

  bool all_satisfied() const {
    for (const auto& e : entries) {
      if (!e.satisfied) return false;
    }
    return true;
  }
  const RestrictionEntry* find(std::string_view id) const {
    for (const auto& e : entries) {
      if (e.id == id) return &e;
    }
    return nullptr;
  }
};

/// Cases 1 to 3 determine a one-parameter family instead of a point: the
/// free coefficient ranges over (lo, hi) and at() materializes the full set
/// for one value of it.
struct FamilySolution {
  std::string parameter;  // "epsilon" or "gamma"
  double lo = 0.0;
  double hi = 0.0;  // +infinity for the unbounded gamma family
  std::function<ThermalCoefficients(double)> at;
};

struct CaseSolution {
  enum class Kind { Unique, Family, Infeasible };
  Kind kind = Kind::Infeasible;
  std::optional<double> xi;
  std::optional<ThermalCoefficients> coefficients;
  std::optional<FamilySolution> family;
  std::vector<RestrictionEntry> violations;
  RestrictionReport audit;
  std::optional<double> residual1;
  std::optional<double> residual2;
};

// ---------------------------------------------------------------------------
// Auxiliary roots. Each is the positive root of a data-defined scalar
// equation; absence (an empty optional) is an answer, not an error.

/// Root of M (1 - 2x^2) = (1 - x^2) e^{x^2} in (0, 1/sqrt(2)); the argmax of
/// the f4 kernel. Exists exactly when M > 1.
inline std::optional<double> eta4_root(double m, double tol_x = 1e-12) {
  if (!(m > 1.0)) return std::nullopt;
  RootProblem p;
  p.objective = [m](double x) {
    return m * (1.0 - 2.0 * x * x) - (1.0 - x * x) * std::exp(x * x);
  };
  p.target = 0.0;
  p.lo = 1e-12;
  p.hi = std::numbers::sqrt2 / 2.0;
  p.hint = Monotonicity::Decreasing;
  p.tol_x = tol_x;
  return solve(p).root;
}

/// Root of M (1 - 2x^2) = e^{x^2} in (0, 1/sqrt(2)); the argmax of the g14
/// kernel. Exists exactly when M > 1.
inline std::optional<double> eta14_root(double m, double tol_x = 1e-12) {
  if (!(m > 1.0)) return std::nullopt;
  RootProblem p;
  p.objective = [m](double x) {
    return m * (1.0 - 2.0 * x * x) - std::exp(x * x);
  };
  p.target = 0.0;
  p.lo = 1e-12;
  p.hi = std::numbers::sqrt2 / 2.0;
  p.hint = Monotonicity::Decreasing;
  p.tol_x = tol_x;
  return solve(p).root;
}

/// Root of K e^{-x^2} = x^2 (always exists, unique).
inline double zeta15_root(double kk, double tol_x = 1e-12) {
  RootProblem p;
  p.objective = [kk](double x) { return kk * std::exp(-x * x) - x * x; };
  p.target = 0.0;
  p.lo = 1e-8;
  p.hi = 1.0;
  p.hint = Monotonicity::Decreasing;
  p.tol_x = tol_x;
  return solve(p).root;
}

/// Root of K e^{-x^2} = (b e^{x^2} + 1) x^2 with b = gamma k / (2 q0 sigma);
/// always exists, unique, and sits below the zeta15 root.
inline double zeta25_root(double kk, double b, double tol_x = 1e-12) {
  RootProblem p;
  p.objective = [kk, b](double x) {
    return kk * std::exp(-x * x) - (b * exp_sq(x) + 1.0) * x * x;
  };
  p.target = 0.0;
  p.lo = 1e-8;
  p.hi = 1.0;
  p.hint = Monotonicity::Decreasing;
  p.tol_x = tol_x;
  return solve(p).root;
}

/// Root of K (1 + 1/x^2) e^{-x^2} = x^2 (always exists, unique).
inline double eta5_root(double kk, double tol_x = 1e-12) {
  RootProblem p;
  p.objective = [kk](double x) {
    return kk * (1.0 + 1.0 / (x * x)) * std::exp(-x * x) - x * x;
  };
  p.target = 0.0;
  p.lo = 1e-8;
  p.hi = 1.0;
  p.hint = Monotonicity::Decreasing;
  p.tol_x = tol_x;
  return solve(p).root;
}

/// Root of K e^{-x^2} / x = 1 (always exists, unique).
inline double eta8_root(double kk, double tol_x = 1e-12) {
  RootProblem p;
  p.objective = [kk](double x) { return kk * std::exp(-x * x) / x - 1.0; };
  p.target = 0.0;
  p.lo = 1e-8;
  p.hi = 1.0;
  p.hint = Monotonicity::Decreasing;
  p.tol_x = tol_x;
  return solve(p).root;
}

/// The f6 = 1 crossing, available in closed form: e^{-zeta6^2} equals nu6
/// (the positive root of the group-1 quadratic), so zeta6 = sqrt(ln(1/nu6)).
/// Empty when nu6 > 1, degenerate 0 at nu6 = 1.
inline std::optional<double> zeta6_root(double nu6) {
  if (nu6 > 1.0) return std::nullopt;
  if (nu6 == 1.0) return 0.0;
  return std::sqrt(std::log(1.0 / nu6));
}

/// The pair of f4 = 1 crossings around the argmax eta. Empty when the peak
/// stays below one (group 3); collapses to {eta, eta} inside the equality
/// band (group 2).
inline std::optional<std::array<double, 2>> zeta4_pair(
    const KnownData& kd, double gamma, double rho, double c, double m,
    double eta, double trichotomy_tol = 1e-9, double tol_x = 1e-12) {
  const double peak = aux_f4(eta, kd, gamma, rho, c, m);
  if (peak < 1.0 - trichotomy_tol) return std::nullopt;
  if (peak <= 1.0 + trichotomy_tol) return std::array<double, 2>{eta, eta};

  auto f4 = [&](double x) { return aux_f4(x, kd, gamma, rho, c, m); };
  RootProblem left;
  left.objective = f4;
  left.target = 1.0;
  left.lo = eta * 0.5;
  left.hi = eta;
  left.hint = Monotonicity::Increasing;
  left.tol_x = tol_x;
  const double z1 = solve(left).root;

  // f4 vanishes at sqrt(ln M), which lies right of eta; a definite bracket.
  RootProblem right;
  right.objective = f4;
  right.target = 1.0;
  right.lo = eta;
  right.hi = std::sqrt(std::log(m));
  right.hint = Monotonicity::Decreasing;
  right.tol_x = tol_x;
  const double z2 = solve(right).root;
  return std::array<double, 2>{z1, z2};
}

enum class AuxRoot { eta4, zeta4_pair, eta5, zeta5_1, zeta5_2, eta8, eta14, zeta6 };

/// Uniform entry point over the auxiliary roots: returns every root the data
/// admits (possibly none). Missing coefficients raise missing_parameter.
inline std::vector<double> solve_auxiliary_root(AuxRoot which,
                                                const KnownData& kd,
                                                const CoefficientSet& g,
                                                const SolveTolerances& tol = {}) {
  switch (which) {
    case AuxRoot::eta4: {
      const double m = group_m(kd, g.req_rho(), g.req_l());
      if (auto r = eta4_root(m, tol.root_tol)) return {*r};
      return {};
    }
    case AuxRoot::eta14: {
      const double m = group_m(kd, g.req_rho(), g.req_l());
      if (auto r = eta14_root(m, tol.root_tol)) return {*r};
      return {};
    }
    case AuxRoot::zeta5_1:
      return {zeta15_root(group_k(kd, g.req_c(), g.req_l(), g.req_k()), tol.root_tol)};
    case AuxRoot::zeta5_2: {
      const double kk = group_k(kd, g.req_c(), g.req_l(), g.req_k());
      const double b = g.req_gamma() * g.req_k() / (2.0 * kd.q0 * kd.sigma);
      return {zeta25_root(kk, b, tol.root_tol)};
    }
    case AuxRoot::eta5:
      return {eta5_root(group_k(kd, g.req_c(), g.req_l(), g.req_k()), tol.root_tol)};
    case AuxRoot::eta8:
      return {eta8_root(group_k(kd, g.req_c(), g.req_l(), g.req_k()), tol.root_tol)};
    case AuxRoot::zeta6: {
      const auto ac = aux_constants(kd, g);
      if (!ac.nu6) throw missing_parameter("zeta6 needs rho, l, gamma, k");
      if (auto r = zeta6_root(*ac.nu6)) return {*r};
      return {};
    }
    case AuxRoot::zeta4_pair: {
      const double m = group_m(kd, g.req_rho(), g.req_l());
      const auto eta = eta4_root(m, tol.root_tol);
      if (!eta) return {};
      const auto z = zeta4_pair(kd, g.req_gamma(), g.req_rho(), g.req_c(), m,
                                *eta, tol.trichotomy_tol, tol.root_tol);
      if (!z) return {};
      return {(*z)[0], (*z)[1]};
    }
  }
  throw bad_domain("solve_auxiliary_root: invalid root id");
}

// ---------------------------------------------------------------------------
// Closed-form recoveries shared by the case solvers. Each is the exact
// solution of one consistency equation for one coefficient.

inline double gamma_from_eq1(const KnownData& kd, double rho, double l, double k,
                             double eps, double xi) {
  const double e = exp_sq(xi);
  return 2.0 * kd.q0 * (kd.q0 / (rho * l) - kd.sigma * e) /
         (k * (1.0 - eps) * e * e);
}

inline double l_from_eq1(const KnownData& kd, double rho, double k, double eps,
                         double gamma, double xi) {
  const double e = exp_sq(xi);
  return kd.q0 /
         (e * rho * (kd.sigma + gamma * k * (1.0 - eps) * e / (2.0 * kd.q0)));
}

inline double rho_from_eq1(const KnownData& kd, double l, double k, double eps,
                           double gamma, double xi) {
  const double e = exp_sq(xi);
  return kd.q0 /
         (e * l * (kd.sigma + gamma * k * (1.0 - eps) * e / (2.0 * kd.q0)));
}

/// k from the convective condition once xi is known.
inline double k_from_eq2(const KnownData& kd, double xi) {
  const double w = group_w(kd);
  return kd.q0 * kd.sigma * sqrt_pi() * aux_g5(xi) / (kd.D_inf * w);
}

// ---------------------------------------------------------------------------
// The xi equations.

enum class XiEquation { Direct, E4, E5, E13, E14 };

inline XiEquation xi_equation_for(CaseId id) {
  switch (id) {
    case CaseId::EpsilonGamma:
    case CaseId::EpsilonL:
    case CaseId::GammaL: return XiEquation::Direct;
    case CaseId::EpsilonK:
    case CaseId::GammaK:
    case CaseId::LK: return XiEquation::E4;
    case CaseId::KRho: return XiEquation::E13;
    case CaseId::KC: return XiEquation::E14;
    default: return XiEquation::E5;
  }
}

struct XiResult {
  double xi = 0.0;
  XiEquation equation = XiEquation::Direct;
  RootResult detail;
};

/// Determines xi for a scenario. Cases 1 to 3 read it off the given
/// diffusivity; the rest solve their scalar equation. Throws bad_domain when
/// the data violates the equation's solvability precondition, no_bracket
/// when a root provably absent in the searched range, and propagates
/// overflow_guard from extreme data.
inline XiResult solve_xi(const Scenario& sc, const SolveTolerances& tol = {}) {
  const KnownData& kd = sc.known;
  const CoefficientSet& g = sc.given;
  XiResult out;
  out.equation = xi_equation_for(sc.case_id);
  switch (out.equation) {
    case XiEquation::Direct: {
      out.xi = xi_of(kd, alpha_of(g.req_k(), g.req_rho(), g.req_c()));
      return out;
    }
    case XiEquation::E4: {
      const double w = group_w(kd);
      const double target =
          kd.sigma * g.req_rho() * g.req_c() * kd.D_inf * w / (kd.q0 * sqrt_pi());
      if (!(target > 0.0)) {
        throw bad_domain("E4: needs W > 0 (R2)");
      }
      RootProblem p;
      p.objective = [](double x) { return aux_g4(x); };
      p.target = target;
      p.lo = 1e-8;
      p.hi = 1.0;
      p.hint = Monotonicity::Increasing;
      p.tol_x = tol.root_tol;
      out.detail = solve(p);
      out.xi = out.detail.root;
      return out;
    }
    case XiEquation::E5: {
      const double w = group_w(kd);
      const double target =
          g.req_k() * kd.D_inf * w / (kd.q0 * kd.sigma * sqrt_pi());
      if (!(target > 0.0)) {
        throw bad_domain("E5: needs W > 0 (R2)");
      }
      if (!(target < detail::two_over_sqrt_pi)) {
        throw bad_domain("E5: needs W < 2 q0 sigma / (k D_inf) (R17)");
      }
      RootProblem p;
      p.objective = [](double x) { return aux_g5(x); };
      p.target = target;
      p.lo = 1e-8;
      p.hi = 1.0;
      p.hint = Monotonicity::Decreasing;
      p.tol_x = tol.root_tol;
      out.detail = solve(p);
      out.xi = out.detail.root;
      return out;
    }
    case XiEquation::E13: {
      const auto ac = aux_constants(kd, g);
      const double w = *ac.W;
      if (!(w > 0.0)) {
        throw bad_domain("E13: needs W > 0 (R2)");
      }
      // a13 g13 = c13 h13, solved as the monotone ratio g13/h13 = c13/a13.
      const double target = *ac.c13 / *ac.a13;
      const double b13 = *ac.b13;
      RootProblem p;
      p.objective = [b13](double x) { return aux_g13(x) / aux_h13(x, b13); };
      p.target = target;
      p.lo = 1e-8;
      p.hi = 1.0;
      p.hint = Monotonicity::Decreasing;
      p.tol_x = tol.root_tol;
      out.detail = solve(p);
      out.xi = out.detail.root;
      return out;
    }
    case XiEquation::E14: {
      const auto ac = aux_constants(kd, g);
      if (!(*ac.W > 0.0)) {
        throw bad_domain("E14: needs W > 0 (R2)");
      }
      const double m = ac.M.value_or(0.0);
      const auto eta = eta14_root(m, tol.root_tol);
      if (!eta) {
        throw bad_domain("E14: needs M > 1 (R3)");
      }
      const double a14 = *ac.a14;
      auto diff = [m, a14](double x) {
        return aux_g14(x, m) - aux_h14(x) / a14;
      };
      const double at_eta = diff(*eta);
      RootProblem p;
      p.objective = diff;
      p.target = 0.0;
      p.tol_x = tol.root_tol;
      if (at_eta == 0.0) {
        out.xi = *eta;
        out.detail.root = *eta;
        return out;
      }
      if (at_eta > 0.0) {
        // Strictly decreasing beyond the argmax: the root is to the right.
        p.lo = *eta;
        p.hi = *eta * 2.0;
        p.hint = Monotonicity::Decreasing;
      } else {
        // The difference starts at zero with slope a14 (M - 1) - 2/sqrt(pi);
        // only a positive start can cross back before the argmax.
        const double slope0 = a14 * (m - 1.0) - detail::two_over_sqrt_pi;
        if (!(slope0 > 0.0)) {
          throw no_bracket("E14: no positive crossing (R19)");
        }
        p.lo = *eta * 1e-6;
        p.hi = *eta;
        p.hint = Monotonicity::Decreasing;
      }
      out.detail = solve(p);
      out.xi = out.detail.root;
      return out;
    }
  }
  throw bad_domain("solve_xi: invalid equation");
}

// ---------------------------------------------------------------------------
// Restriction audit.

namespace detail_audit {

inline void flag_boundary(RestrictionEntry& e, double grey) {
  if (std::isfinite(e.margin) && std::abs(e.margin) < grey) {
    if (!e.note.empty()) e.note += "; ";
    e.note += "boundary: margin within 1e-9 band";
  }
}

inline RestrictionEntry strict_gt(std::string id, double lhs, double rhs,
                                  double grey, std::string note = "") {
  RestrictionEntry e;
  e.id = std::move(id);
  e.lhs = lhs;
  e.rhs = rhs;
  e.margin = lhs - rhs;
  e.satisfied = lhs > rhs;
  e.note = std::move(note);
  flag_boundary(e, grey);
  return e;
}

inline RestrictionEntry strict_lt(std::string id, double lhs, double rhs,
                                  double grey, std::string note = "") {
  RestrictionEntry e;
  e.id = std::move(id);
  e.lhs = lhs;
  e.rhs = rhs;
  e.margin = rhs - lhs;
  e.satisfied = lhs < rhs;
  e.note = std::move(note);
  flag_boundary(e, grey);
  return e;
}

inline RestrictionEntry two_sided(std::string id, double lo, double val,
                                  double hi, double grey, std::string note = "") {
  RestrictionEntry e;
  e.id = std::move(id);
  e.lhs = val;
  const double m_lo = val - lo;
  const double m_hi = hi - val;
  e.margin = std::min(m_lo, m_hi);
  e.rhs = (m_lo < m_hi) ? lo : hi;  // the binding bound
  e.satisfied = val > lo && val < hi;
  e.note = std::move(note);
  flag_boundary(e, grey);
  return e;
}

inline RestrictionEntry failed(std::string id, std::string note) {
  RestrictionEntry e;
  e.id = std::move(id);
  e.satisfied = false;
  e.note = std::move(note);
  return e;
}

}  // namespace detail_audit

/// Evaluates every restriction the scenario's case cites, on data alone.
/// Strict inequalities are audited strictly; margins inside the grey zone
/// are annotated as boundary warnings. Cases 4 and 6 resolve their condition
/// group from the data and report only the active group's entries. A solved
/// solution may be passed as a hint to enrich diagnostic notes; it never
/// changes any verdict.
inline RestrictionReport audit_restrictions(const Scenario& sc,
                                            const SolveTolerances& tol = {},
                                            const CaseSolution* solution_hint = nullptr) {
  using namespace detail_audit;
  const KnownData& kd = sc.known;
  const CoefficientSet& g = sc.given;
  RestrictionReport rep;
  const double w = group_w(kd);
  const double grey = tol.grey_zone;

  auto add_r2 = [&] {
    // Recorded in the form 0 < 1 - q0/(h0 D_inf), i.e. lhs 0, rhs W.
    rep.entries.push_back(strict_lt("R2", 0.0, w, grey,
                                    "q0/(h0 D_inf) must stay below one"));
  };
  auto add_r17 = [&](double k) {
    rep.entries.push_back(strict_lt(
        "R17", w, 2.0 * kd.q0 * kd.sigma / (k * kd.D_inf), grey,
        "keeps the xi equation's right side below 2/sqrt(pi)"));
  };

  switch (sc.case_id) {
    case CaseId::EpsilonGamma:
    case CaseId::EpsilonL:
    case CaseId::GammaL: {
      const double xi = xi_of(kd, alpha_of(g.req_k(), g.req_rho(), g.req_c()));
      ThermalCoefficients probe{1.0, g.req_k(), g.req_rho(), g.req_c(), 0.5, 1.0};
      const double res2 = residual_eq2(kd, probe);
      RestrictionEntry e;
      e.id = "eq:2";
      e.lhs = res2;
      e.rhs = 0.0;
      e.margin = tol.residual_tol - std::abs(res2);
      e.satisfied = std::abs(res2) <= tol.residual_tol;
      e.note = "consistency of the convective condition at the given diffusivity";
      rep.entries.push_back(e);
      if (sc.case_id == CaseId::EpsilonGamma) {
        const double m = group_m(kd, g.req_rho(), g.req_l());
        rep.entries.push_back(
            strict_gt("R1", m * std::exp(-xi * xi), 1.0, grey,
                      "positive mushy width for every epsilon"));
      }
      break;
    }

    case CaseId::EpsilonK:
    case CaseId::GammaK:
    case CaseId::LK: {
      add_r2();
      const double rho = g.req_rho();
      const double c = g.req_c();
      const double coef4 = kd.q0 * sqrt_pi() / (kd.sigma * rho * c * kd.D_inf);
      std::optional<double> m;
      if (g.rho && g.l) m = group_m(kd, *g.rho, *g.l);

      if (sc.case_id == CaseId::LK) {
        // l is unknown here; only R2 is cited for this case.
        break;
      }
      rep.entries.push_back(strict_gt("R3", m.value_or(-1.0), 1.0, grey,
                                      "M = q0/(rho l sigma) must exceed one"));
      if (!(m && *m > 1.0)) {
        rep.entries.push_back(
            failed("R4", "not evaluable: needs M > 1 for sqrt(ln M)"));
        break;
      }
      const double lnm_sqrt = std::sqrt(std::log(*m));
      rep.entries.push_back(
          strict_lt("R4", w, coef4 * aux_g4(lnm_sqrt), grey,
                    "keeps the recovered epsilon below one"));

      if (sc.case_id != CaseId::EpsilonK) break;
      const double gamma = g.req_gamma();
      const auto eta = eta4_root(*m, tol.root_tol);
      if (!eta) break;
      const double peak = aux_f4(*eta, kd, gamma, rho, c, *m);
      if (peak > 1.0 + tol.trichotomy_tol) {
        rep.active_group = 1;
        rep.entries.push_back(strict_gt("R5", peak, 1.0, grey,
                                        "group 1: the f4 peak exceeds one"));
        const auto z = zeta4_pair(kd, gamma, rho, c, *m, *eta,
                                  tol.trichotomy_tol, tol.root_tol);
        const double lo_bound = coef4 * aux_g4((*z)[0]);
        const double hi_bound = coef4 * aux_g4((*z)[1]);
        RestrictionEntry e;
        e.id = "R6";
        e.lhs = w;
        const double m_left = lo_bound - w;
        const double m_right = w - hi_bound;
        e.margin = std::max(m_left, m_right);
        e.rhs = (m_left > m_right) ? lo_bound : hi_bound;
        e.satisfied = (w < lo_bound) || (w > hi_bound);
        e.note = "W must avoid the band spanned by the f4 = 1 crossings";
        if (solution_hint && solution_hint->xi) {
          e.note += (*solution_hint->xi < *eta)
                        ? "; solved xi sits left of the argmax"
                        : "; solved xi sits right of the argmax";
        }
        flag_boundary(e, grey);
        rep.entries.push_back(e);
      } else if (peak >= 1.0 - tol.trichotomy_tol) {
        rep.active_group = 2;
        RestrictionEntry e7;
        e7.id = "R7";
        e7.lhs = peak;
        e7.rhs = 1.0;
        e7.margin = tol.trichotomy_tol - std::abs(peak - 1.0);
        e7.satisfied = true;
        e7.note = "group 2: the f4 peak equals one within tolerance";
        rep.entries.push_back(e7);
        RestrictionEntry e8;
        e8.id = "R8";
        e8.lhs = w;
        e8.rhs = coef4 * aux_g4(*eta);
        e8.margin = std::abs(w - e8.rhs);
        e8.satisfied = e8.margin > 0.0;
        e8.note = "W must differ from the peak image";
        flag_boundary(e8, grey);
        rep.entries.push_back(e8);
      } else {
        rep.active_group = 3;
        rep.entries.push_back(strict_lt("R9", peak, 1.0, grey,
                                        "group 3: the f4 peak stays below one"));
      }
      break;
    }

    case CaseId::EpsilonRho: {
      const double k = g.req_k();
      const double kk = group_k(kd, g.req_c(), g.req_l(), k);
      const double b = g.req_gamma() * k / (2.0 * kd.q0 * kd.sigma);
      const double coef5 = kd.q0 * kd.sigma * sqrt_pi() / (k * kd.D_inf);
      const double z1 = zeta15_root(kk, tol.root_tol);
      const double z2 = zeta25_root(kk, b, tol.root_tol);
      const double lo = coef5 * aux_g5(z1);
      const double hi = std::min(2.0 * kd.q0 * kd.sigma / (k * kd.D_inf),
                                 coef5 * aux_g5(z2));
      rep.entries.push_back(two_sided(
          "R12", lo, w, hi, grey,
          "W inside the image of the admissible xi window (zeta2, zeta1)"));
      break;
    }

    case CaseId::EpsilonC: {
      const double k = g.req_k();
      const double coef5 = kd.q0 * kd.sigma * sqrt_pi() / (k * kd.D_inf);
      const auto ac = aux_constants(kd, g);
      const double m = ac.M.value_or(-1.0);
      const double q = *ac.Q;
      // R13 with the consistent g5 reading; the f5-style value is noted.
      if (m > 1.0) {
        const double lnm_sqrt = std::sqrt(std::log(m));
        RestrictionEntry e = strict_gt("R13", w, coef5 * aux_g5(lnm_sqrt), grey);
        e.note = "reconciled reading: keeps the recovered epsilon below one via "
                 "the g5 threshold; the alternative f5 form needs the unknown c "
                 "and cannot be audited from data";
        rep.entries.push_back(e);
      } else {
        rep.entries.push_back(
            failed("R13", "not evaluable: needs M > 1 for sqrt(ln M)"));
      }
      const double group1_lhs = q * (m - 1.0);
      if (group1_lhs >= 1.0) {
        rep.active_group = 1;
        RestrictionEntry e14;
        e14.id = "R14";
        e14.lhs = m;
        e14.rhs = 1.0 / q + 1.0;
        e14.margin = m - e14.rhs;
        e14.satisfied = m >= e14.rhs - 0.0;  // non-strict
        e14.note = "group 1: the f6 start Q (M - 1) reaches one";
        flag_boundary(e14, grey);
        rep.entries.push_back(e14);
        const double nu6 = *ac.nu6;
        const auto z6 = zeta6_root(nu6);
        const double hi = std::min(2.0 * kd.q0 * kd.sigma / (k * kd.D_inf),
                                   coef5 * aux_g5(z6 ? *z6 : 0.0));
        rep.entries.push_back(strict_lt(
            "R15", w, hi, grey,
            "keeps the recovered epsilon positive (xi beyond the f6 = 1 crossing)"));
      } else if (m > 1.0) {
        rep.active_group = 2;
        rep.entries.push_back(two_sided(
            "R16", 1.0, m, 1.0 / q + 1.0, grey,
            "group 2: the f6 start stays below one"));
        add_r17(k);
      } else {
        rep.entries.push_back(failed(
            "R14", "no condition group applies: M does not exceed one"));
        rep.entries.push_back(failed(
            "R16", "no condition group applies: M does not exceed one"));
      }
      break;
    }

    case CaseId::GammaRho: {
      const double k = g.req_k();
      add_r2();
      add_r17(k);
      const double kk = group_k(kd, g.req_c(), g.req_l(), k);
      const double coef5 = kd.q0 * kd.sigma * sqrt_pi() / (k * kd.D_inf);
      const double e8 = eta8_root(kk, tol.root_tol);
      RestrictionEntry e = strict_gt("R18", w, coef5 * aux_g5(e8), grey);
      const double z15 = zeta15_root(kk, tol.root_tol);
      const bool derived_ok = w > coef5 * aux_g5(z15);
      e.note = std::string("eta8-root threshold; the zeta15-root reading, "
                           "equivalent to positivity of the recovered gamma, "
                           "evaluates to ") +
               (derived_ok ? "satisfied" : "violated");
      rep.entries.push_back(e);
      break;
    }

    case CaseId::GammaC: {
      const double k = g.req_k();
      const auto m_opt = (g.rho && g.l)
                             ? std::optional<double>(group_m(kd, *g.rho, *g.l))
                             : std::nullopt;
      const double m = m_opt.value_or(-1.0);
      rep.entries.push_back(strict_gt("R3", m, 1.0, grey,
                                      "M = q0/(rho l sigma) must exceed one"));
      const double coef5 = kd.q0 * kd.sigma * sqrt_pi() / (k * kd.D_inf);
      if (m > 1.0) {
        const double lnm_sqrt = std::sqrt(std::log(m));
        RestrictionEntry e = strict_gt("R13", w, coef5 * aux_g5(lnm_sqrt), grey);
        e.note = "reconciled reading: keeps the recovered gamma positive via the "
                 "g5 threshold; the alternative f5 form needs the unknown c";
        rep.entries.push_back(e);
      } else {
        rep.entries.push_back(
            failed("R13", "not evaluable: needs M > 1 for sqrt(ln M)"));
      }
      add_r17(k);
      break;
    }

    case CaseId::LRho:
    case CaseId::LC:
    case CaseId::RhoC: {
      add_r2();
      add_r17(g.req_k());
      break;
    }

    case CaseId::KRho: {
      add_r2();
      break;
    }

    case CaseId::KC: {
      add_r2();
      const auto ac = aux_constants(kd, g);
      const double m = ac.M.value_or(-1.0);
      rep.entries.push_back(strict_gt("R3", m, 1.0, grey,
                                      "M = q0/(rho l sigma) must exceed one"));
      if (m > 1.0 && *ac.W > 0.0) {
        const double eta = *eta14_root(m, tol.root_tol);
        const double a14 = *ac.a14;
        const double g_eta = aux_g14(eta, m);
        const double h_eta = aux_h14(eta);
        RestrictionEntry e = strict_gt(
            "R19", a14 * g_eta, h_eta, grey,
            std::string("a14-weighted comparison at the shared argmax, the "
                        "form the root-existence argument needs; the "
                        "unweighted comparison evaluates to ") +
                (g_eta > h_eta ? "satisfied" : "violated"));
        if (!e.satisfied) {
          // The xi equation can still cross zero left of the argmax when the
          // difference leaves the origin with positive slope; the audit must
          // accept exactly the data the solver accepts.
          const double slope0 = a14 * (m - 1.0) - detail::two_over_sqrt_pi;
          if (slope0 > 0.0) {
            e.satisfied = true;
            e.margin = slope0;
            e.note +=
                "; a crossing still exists left of the argmax because the "
                "initial slope a14 (M - 1) - 2/sqrt(pi) is positive";
          }
        }
        rep.entries.push_back(e);
      } else {
        rep.entries.push_back(
            failed("R19", "not evaluable: needs M > 1 and W > 0"));
      }
      break;
    }
  }
  return rep;
}

/// Sufficiency screen for the epsilon-k case: the data conditions that
/// guarantee a unique admissible solution without solving anything.
struct SufficiencyReport {
  bool sufficient = false;
  std::vector<RestrictionEntry> entries;
};

inline SufficiencyReport check_case4_sufficient(const Scenario& sc,
                                                const SolveTolerances& tol = {}) {
  using namespace detail_audit;
  if (sc.case_id != CaseId::EpsilonK) {
    throw bad_domain("check_case4_sufficient: defined for the epsilon-k case");
  }
  const KnownData& kd = sc.known;
  const CoefficientSet& g = sc.given;
  SufficiencyReport rep;
  const double grey = tol.grey_zone;
  const double w = group_w(kd);
  const double rho = g.req_rho();
  const double c = g.req_c();
  const double l = g.req_l();
  const double gamma = g.req_gamma();
  const double m = group_m(kd, rho, l);
  rep.entries.push_back(strict_gt("R3", m, 1.0, grey));
  if (!(m > 1.0)) {
    rep.entries.push_back(failed("R11", "not evaluable: needs M > 1"));
    rep.entries.push_back(failed("R10", "not evaluable: needs M > 1"));
    return rep;
  }
  const double lnm = std::log(m);
  const double r11_lhs = 2.0 * kd.q0 * lnm * (m - 1.0) / (rho * gamma * c * kd.sigma);
  rep.entries.push_back(strict_gt(
      "R11", r11_lhs, 1.0, grey,
      "places the sufficiency quadratic's root below one"));
  const auto ac = aux_constants(kd, g);
  if (!(r11_lhs > 1.0) || !ac.nu4 || !(*ac.nu4 < 1.0)) {
    rep.entries.push_back(failed("R10", "not evaluable: needs R11 (nu4 < 1)"));
    return rep;
  }
  const double coef4 = kd.q0 * sqrt_pi() / (kd.sigma * rho * c * kd.D_inf);
  const double lo = coef4 * aux_g4(std::sqrt(std::log(1.0 / *ac.nu4)));
  const double hi = coef4 * aux_g4(std::sqrt(lnm));
  rep.entries.push_back(two_sided(
      "R10", lo, w, hi, grey,
      "W inside the image of (sqrt(ln 1/nu4), sqrt(ln M))"));
  rep.sufficient = rep.entries[0].satisfied && rep.entries[1].satisfied &&
                   rep.entries[2].satisfied;
  return rep;
}

// ---------------------------------------------------------------------------
// The complete per-case solve.

namespace detail_cases {

/// Recovers the unknown pair once xi is fixed. Throws nothing; range checks
/// happen in solve_case.
inline ThermalCoefficients recover(const Scenario& sc, double xi) {
  const KnownData& kd = sc.known;
  const CoefficientSet& g = sc.given;
  ThermalCoefficients tc;
  tc.l = g.l.value_or(0.0);
  tc.k = g.k.value_or(0.0);
  tc.rho = g.rho.value_or(0.0);
  tc.c = g.c.value_or(0.0);
  tc.epsilon = g.epsilon.value_or(0.0);
  tc.gamma = g.gamma.value_or(0.0);
  const double s2 = kd.sigma * kd.sigma;
  const double x2 = xi * xi;
  switch (sc.case_id) {
    case CaseId::EpsilonK:
      tc.k = tc.rho * tc.c * s2 / x2;
      tc.epsilon = 1.0 - aux_f4(xi, kd, tc.gamma, tc.rho, tc.c,
                                group_m(kd, tc.rho, tc.l));
      break;
    case CaseId::EpsilonRho:
      tc.rho = tc.k * x2 / (tc.c * s2);
      tc.epsilon = 1.0 - aux_f5(xi, kd, tc.gamma, tc.k,
                                group_k(kd, tc.c, tc.l, tc.k));
      break;
    case CaseId::EpsilonC:
      tc.c = tc.k * x2 / (tc.rho * s2);
      tc.epsilon = 1.0 - aux_f6(xi, group_q(kd, tc.gamma, tc.k),
                                group_m(kd, tc.rho, tc.l));
      break;
    case CaseId::GammaK:
      tc.k = tc.rho * tc.c * s2 / x2;
      tc.gamma = gamma_from_eq1(kd, tc.rho, tc.l, tc.k, tc.epsilon, xi);
      break;
    case CaseId::GammaRho:
      tc.rho = tc.k * x2 / (tc.c * s2);
      tc.gamma = gamma_from_eq1(kd, tc.rho, tc.l, tc.k, tc.epsilon, xi);
      break;
    case CaseId::GammaC:
      tc.c = tc.k * x2 / (tc.rho * s2);
      tc.gamma = gamma_from_eq1(kd, tc.rho, tc.l, tc.k, tc.epsilon, xi);
      break;
    case CaseId::LK:
      tc.k = tc.rho * tc.c * s2 / x2;
      tc.l = l_from_eq1(kd, tc.rho, tc.k, tc.epsilon, tc.gamma, xi);
      break;
    case CaseId::LRho:
      tc.rho = tc.k * x2 / (tc.c * s2);
      tc.l = l_from_eq1(kd, tc.rho, tc.k, tc.epsilon, tc.gamma, xi);
      break;
    case CaseId::LC:
      tc.c = tc.k * x2 / (tc.rho * s2);
      tc.l = l_from_eq1(kd, tc.rho, tc.k, tc.epsilon, tc.gamma, xi);
      break;
    case CaseId::KRho:
      tc.k = k_from_eq2(kd, xi);
      tc.rho = tc.k * x2 / (tc.c * s2);
      break;
    case CaseId::KC:
      tc.k = k_from_eq2(kd, xi);
      tc.c = tc.k * x2 / (tc.rho * s2);
      break;
    case CaseId::RhoC:
      tc.rho = rho_from_eq1(kd, tc.l, tc.k, tc.epsilon, tc.gamma, xi);
      tc.c = tc.k * x2 / (tc.rho * s2);
      break;
    default: break;
  }
  return tc;
}

inline RestrictionEntry semantic_entry(std::string id, double value,
                                       std::string note) {
  RestrictionEntry e;
  e.id = std::move(id);
  e.lhs = value;
  e.satisfied = false;
  e.margin = 0.0;
  e.note = std::move(note);
  return e;
}

}  // namespace detail_cases

/// Solves one scenario end to end: audits the data, determines xi, recovers
/// the unknown pair, and validates the result semantically (positivity,
/// epsilon range, consistency residuals). Returns a unique solution, a
/// one-parameter family (cases 1 to 3), or an infeasibility verdict carrying
/// the audit and the violated conditions.
inline CaseSolution solve_case(const Scenario& sc, const SolveTolerances& tol = {}) {
  validate_scenario(sc);
  CaseSolution out;
  out.audit = audit_restrictions(sc, tol);

  auto fail = [&](std::vector<RestrictionEntry> extra) {
    out.kind = CaseSolution::Kind::Infeasible;
    out.violations.clear();
    for (const auto& e : out.audit.entries) {
      if (!e.satisfied) out.violations.push_back(e);
    }
    for (auto& e : extra) {
      if (!out.audit.find(e.id)) out.violations.push_back(std::move(e));
    }
    return out;
  };

  const KnownData& kd = sc.known;
  const CoefficientSet& g = sc.given;
  const int num = static_cast<int>(sc.case_id);

  if (num <= 3) {
    const double xi = xi_of(kd, alpha_of(g.req_k(), g.req_rho(), g.req_c()));
    out.xi = xi;
    if (!out.audit.all_satisfied()) return fail({});
    FamilySolution fam;
    const double l_or = g.l.value_or(0.0);
    const double k = g.req_k();
    const double rho = g.req_rho();
    const double c = g.req_c();
    switch (sc.case_id) {
      case CaseId::EpsilonGamma:
        fam.parameter = "epsilon";
        fam.lo = 0.0;
        fam.hi = 1.0;
        fam.at = [kd, l_or, k, rho, c, xi](double eps) {
          ThermalCoefficients tc{l_or, k, rho, c, eps, 0.0};
          tc.gamma = gamma_from_eq1(kd, rho, l_or, k, eps, xi);
          return tc;
        };
        break;
      case CaseId::EpsilonL: {
        const double gamma = g.req_gamma();
        fam.parameter = "epsilon";
        fam.lo = 0.0;
        fam.hi = 1.0;
        fam.at = [kd, k, rho, c, gamma, xi](double eps) {
          ThermalCoefficients tc{0.0, k, rho, c, eps, gamma};
          tc.l = l_from_eq1(kd, rho, k, eps, gamma, xi);
          return tc;
        };
        break;
      }
      case CaseId::GammaL: {
        const double eps = g.req_epsilon();
        fam.parameter = "gamma";
        fam.lo = 0.0;
        fam.hi = std::numeric_limits<double>::infinity();
        fam.at = [kd, k, rho, c, eps, xi](double gamma) {
          ThermalCoefficients tc{0.0, k, rho, c, eps, gamma};
          tc.l = l_from_eq1(kd, rho, k, eps, gamma, xi);
          return tc;
        };
        break;
      }
      default: break;
    }
    out.kind = CaseSolution::Kind::Family;
    out.family = std::move(fam);
    return out;
  }

  // Unique-pair cases: xi first. If the equation has no admissible root, the
  // verdict cites the solvability restriction whether or not it is on the
  // case's audited list.
  auto solvability_citations = [&] {
    using namespace detail_audit;
    std::vector<RestrictionEntry> extra;
    const double w = group_w(kd);
    const XiEquation eq = xi_equation_for(sc.case_id);
    if (!(w > 0.0)) {
      extra.push_back(strict_lt("R2", 0.0, w, tol.grey_zone,
                                "solvability: the xi equation needs W > 0"));
    }
    if (eq == XiEquation::E5 && g.k) {
      const double bound = 2.0 * kd.q0 * kd.sigma / (*g.k * kd.D_inf);
      if (!(w < bound)) {
        extra.push_back(
            strict_lt("R17", w, bound, tol.grey_zone,
                      "solvability: the xi equation's right side must stay "
                      "below 2/sqrt(pi)"));
      }
    }
    if (eq == XiEquation::E14 && g.rho && g.l) {
      const double m = group_m(kd, *g.rho, *g.l);
      if (!(m > 1.0)) {
        extra.push_back(strict_gt("R3", m, 1.0, tol.grey_zone,
                                  "solvability: the xi equation needs M > 1"));
      }
    }
    return extra;
  };

  XiResult xr;
  try {
    xr = solve_xi(sc, tol);
  } catch (const bad_domain&) {
    return fail(solvability_citations());
  } catch (const no_bracket&) {
    return fail(solvability_citations());
  } catch (const overflow_guard& e) {
    return fail({detail_cases::semantic_entry(
        "overflow", 0.0, std::string("evaluation guard: ") + e.what())});
  }
  out.xi = xr.xi;

  ThermalCoefficients tc = detail_cases::recover(sc, xr.xi);
  std::vector<RestrictionEntry> semantic;
  auto require_pos = [&](double v, const char* name) {
    if (!(v > 0.0)) {
      semantic.push_back(detail_cases::semantic_entry(
          std::string("positivity:") + name, v,
          std::string("recovered ") + name + " must be positive"));
    }
  };
  const auto pair = unknown_pair(sc.case_id);
  for (Coefficient f : pair) {
    const double v = field_of(tc, f);
    if (f == Coefficient::epsilon) {
      if (!(v > 0.0 && v < 1.0)) {
        semantic.push_back(detail_cases::semantic_entry(
            "epsilon-range", v, "recovered epsilon must lie in (0, 1)"));
      }
    } else {
      require_pos(v, coefficient_name(f));
    }
  }
  if (!semantic.empty()) return fail(std::move(semantic));

  double r1 = 0.0, r2 = 0.0;
  try {
    r1 = residual_eq1(kd, tc);
    r2 = residual_eq2(kd, tc);
  } catch (const overflow_guard& e) {
    return fail({detail_cases::semantic_entry(
        "overflow", 0.0, std::string("evaluation guard: ") + e.what())});
  }
  if (std::abs(r1) > tol.residual_tol || std::abs(r2) > tol.residual_tol) {
    return fail({detail_cases::semantic_entry(
        "residual", std::max(std::abs(r1), std::abs(r2)),
        "consistency residuals exceed tolerance after recovery")});
  }

  out.kind = CaseSolution::Kind::Unique;
  out.coefficients = tc;
  out.residual1 = r1;
  out.residual2 = r2;
  return out;
}

}  // namespace mushy
