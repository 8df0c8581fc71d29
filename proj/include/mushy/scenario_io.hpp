#pragma once

// JSON scenario files and machine-readable reports for the command-line
// front end. Parsing is strict: unknown keys anywhere in the document are
// rejected, numeric fields must be JSON numbers, and the case may be given
// either as its index (1-15) or as the unknown pair's name ("l,k").
//
// Report serialization mirrors the solver's own field names so that a report
// can be read back against the in-memory types without a translation table.
// Non-finite numbers (an unbounded family endpoint, an unevaluated bound)
// serialize as JSON null.

#include <charconv>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mushy/cases.hpp"
#include "mushy/model.hpp"

namespace mushy::io {

using ordered_json = nlohmann::ordered_json;

struct ProfileRequest {
  std::vector<double> t_list;
  int nx = 0;
};

/// A parsed scenario file: the task itself plus the optional report knobs.
struct ScenarioDocument {
  Scenario scenario;
  SolveTolerances tolerances;
  std::optional<int> family_samples;
  std::optional<ProfileRequest> profile;
};

namespace detail_io {

inline void expect_keys(const ordered_json& j,
                        std::initializer_list<const char*> allowed,
                        const char* where) {
  if (!j.is_object()) {
    throw bad_domain(std::string("scenario file: ") + where +
                     " must be an object");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known_key = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        known_key = true;
        break;
      }
    }
    if (!known_key) {
      throw bad_domain(std::string("scenario file: unknown key \"") +
                       it.key() + "\" in " + where);
    }
  }
}

inline double number_at(const ordered_json& j, const char* key,
                        const char* where) {
  if (!j.contains(key)) {
    throw bad_domain(std::string("scenario file: ") + where + " is missing \"" +
                     key + "\"");
  }
  const auto& v = j.at(key);
  if (!v.is_number()) {
    throw bad_domain(std::string("scenario file: ") + where + "." + key +
                     " must be a number");
  }
  return v.get<double>();
}

inline CaseId parse_case(const ordered_json& v) {
  if (v.is_number_integer()) {
    const int n = v.get<int>();
    if (n < 1 || n > 15) {
      throw bad_domain("scenario file: case index must be between 1 and 15");
    }
    return static_cast<CaseId>(n);
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto comma = s.find(',');
    if (comma != std::string::npos) {
      const auto id = case_from_pair(s.substr(0, comma), s.substr(comma + 1));
      if (id) return *id;
    }
    throw bad_domain(
        "scenario file: case pair name must join two distinct coefficients "
        "from l, k, rho, c, epsilon, gamma with a comma, e.g. \"l,k\"");
  }
  throw bad_domain("scenario file: case must be an integer or a pair name");
}

inline std::optional<Coefficient> coefficient_from(std::string_view name) {
  for (Coefficient f : {Coefficient::l, Coefficient::k, Coefficient::rho,
                        Coefficient::c, Coefficient::epsilon,
                        Coefficient::gamma}) {
    if (name == coefficient_name(f)) return f;
  }
  return std::nullopt;
}

}  // namespace detail_io

/// Parses one scenario document. Format problems raise bad_domain with a
/// message naming the offending key; semantic problems are left to
/// validate_scenario so that the diagnostics match the library's own.
inline ScenarioDocument parse_scenario(const ordered_json& j) {
  using namespace detail_io;
  expect_keys(j, {"case", "known", "given", "tolerances", "family_samples",
                  "profile"},
              "the top level");
  if (!j.contains("case")) {
    throw bad_domain("scenario file: missing \"case\"");
  }
  if (!j.contains("known") || !j.contains("given")) {
    throw bad_domain("scenario file: missing \"known\" or \"given\"");
  }

  ScenarioDocument doc;
  doc.scenario.case_id = parse_case(j.at("case"));

  const auto& known = j.at("known");
  expect_keys(known, {"q0", "h0", "D_inf", "sigma"}, "\"known\"");
  doc.scenario.known.q0 = number_at(known, "q0", "known");
  doc.scenario.known.h0 = number_at(known, "h0", "known");
  doc.scenario.known.D_inf = number_at(known, "D_inf", "known");
  doc.scenario.known.sigma = number_at(known, "sigma", "known");

  const auto& given = j.at("given");
  expect_keys(given, {"l", "k", "rho", "c", "epsilon", "gamma"}, "\"given\"");
  for (auto it = given.begin(); it != given.end(); ++it) {
    const auto f = coefficient_from(it.key());
    if (!it.value().is_number()) {
      throw bad_domain("scenario file: given." + it.key() +
                       " must be a number");
    }
    field_of(doc.scenario.given, *f) = it.value().get<double>();
  }

  if (j.contains("tolerances")) {
    const auto& tol = j.at("tolerances");
    expect_keys(tol, {"root_tol", "residual_tol", "grey_zone", "trichotomy_tol"},
                "\"tolerances\"");
    auto apply = [&](const char* key, double& slot) {
      if (!tol.contains(key)) return;
      const double v = number_at(tol, key, "tolerances");
      if (!(v > 0.0)) {
        throw bad_domain(std::string("scenario file: tolerances.") + key +
                         " must be positive");
      }
      slot = v;
    };
    apply("root_tol", doc.tolerances.root_tol);
    apply("residual_tol", doc.tolerances.residual_tol);
    apply("grey_zone", doc.tolerances.grey_zone);
    apply("trichotomy_tol", doc.tolerances.trichotomy_tol);
  }

  if (j.contains("family_samples")) {
    const auto& v = j.at("family_samples");
    if (!v.is_number_integer() || v.get<int>() < 1 || v.get<int>() > 100000) {
      throw bad_domain(
          "scenario file: family_samples must be an integer in [1, 100000]");
    }
    doc.family_samples = v.get<int>();
  }

  if (j.contains("profile")) {
    const auto& p = j.at("profile");
    expect_keys(p, {"t_list", "nx"}, "\"profile\"");
    if (!p.contains("t_list") || !p.at("t_list").is_array() ||
        p.at("t_list").empty()) {
      throw bad_domain(
          "scenario file: profile.t_list must be a non-empty array");
    }
    ProfileRequest req;
    for (const auto& tv : p.at("t_list")) {
      if (!tv.is_number() || !(tv.get<double>() > 0.0)) {
        throw bad_domain(
            "scenario file: profile.t_list entries must be positive numbers");
      }
      req.t_list.push_back(tv.get<double>());
    }
    if (!p.contains("nx") || !p.at("nx").is_number_integer() ||
        p.at("nx").get<int>() < 2 || p.at("nx").get<int>() > 1000000) {
      throw bad_domain(
          "scenario file: profile.nx must be an integer in [2, 1000000]");
    }
    req.nx = p.at("nx").get<int>();
    doc.profile = req;
  }

  return doc;
}

/// JSON value for a double that may be absent or non-finite.
inline ordered_json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline ordered_json json_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  return json_number(*v);
}

inline ordered_json coefficients_json(const ThermalCoefficients& tc) {
  ordered_json out;
  out["l"] = tc.l;
  out["k"] = tc.k;
  out["rho"] = tc.rho;
  out["c"] = tc.c;
  out["epsilon"] = tc.epsilon;
  out["gamma"] = tc.gamma;
  return out;
}

inline ordered_json entry_json(const RestrictionEntry& e) {
  ordered_json out;
  out["id"] = e.id;
  out["lhs"] = json_number(e.lhs);
  out["rhs"] = json_number(e.rhs);
  out["satisfied"] = e.satisfied;
  out["margin"] = json_number(e.margin);
  out["note"] = e.note;
  return out;
}

inline ordered_json restriction_json(const RestrictionReport& rep) {
  ordered_json out;
  out["entries"] = ordered_json::array();
  for (const auto& e : rep.entries) out["entries"].push_back(entry_json(e));
  out["active_group"] =
      rep.active_group ? ordered_json(*rep.active_group) : ordered_json(nullptr);
  out["all_satisfied"] = rep.all_satisfied();
  return out;
}

inline const char* kind_name(CaseSolution::Kind k) {
  switch (k) {
    case CaseSolution::Kind::Unique: return "Unique";
    case CaseSolution::Kind::Family: return "Family";
    case CaseSolution::Kind::Infeasible: return "Infeasible";
  }
  return "Infeasible";
}

/// Grid for family sampling: interior points of (lo, hi); an unbounded upper
/// endpoint is covered through the substitution gamma = u/(1-u) over the
/// interior of (0, 1), which sweeps the whole positive axis.
inline std::vector<double> family_parameter_samples(const FamilySolution& fam,
                                                    int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  const bool unbounded = !std::isfinite(fam.hi);
  for (int i = 1; i <= count; ++i) {
    const double u = static_cast<double>(i) / (count + 1);
    if (unbounded) {
      out.push_back(u / (1.0 - u));
    } else {
      out.push_back(fam.lo + u * (fam.hi - fam.lo));
    }
  }
  return out;
}

inline ordered_json family_json(const FamilySolution& fam, int samples) {
  ordered_json out;
  out["parameter"] = fam.parameter;
  out["lo"] = json_number(fam.lo);
  out["hi"] = json_number(fam.hi);
  out["samples"] = ordered_json::array();
  for (double v : family_parameter_samples(fam, samples)) {
    out["samples"].push_back(coefficients_json(fam.at(v)));
  }
  return out;
}

/// The solve report: the solution's own fields, in declaration order, with
/// the audit embedded.
inline ordered_json report_json(const Scenario& sc, const CaseSolution& sol,
                                int family_samples) {
  ordered_json out;
  out["case"] = static_cast<int>(sc.case_id);
  out["kind"] = kind_name(sol.kind);
  out["xi"] = json_number(sol.xi);
  out["coefficients"] = sol.coefficients
                            ? coefficients_json(*sol.coefficients)
                            : ordered_json(nullptr);
  out["family"] = sol.family ? family_json(*sol.family, family_samples)
                             : ordered_json(nullptr);
  out["violations"] = ordered_json::array();
  for (const auto& e : sol.violations) out["violations"].push_back(entry_json(e));
  out["audit"] = restriction_json(sol.audit);
  out["residual1"] = json_number(sol.residual1);
  out["residual2"] = json_number(sol.residual2);
  return out;
}

/// Shortest decimal form that parses back to the same double.
inline std::string csv_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Temperature-profile table: t-major rows, x ascending over [0, s(t)] with
/// nx points per time, all five columns in round-trip precision.
inline std::string profile_csv(const KnownData& kd,
                               const ThermalCoefficients& tc,
                               const ProfileRequest& req) {
  const auto sim = make_similarity(kd, tc);
  std::string out = "t,x,T,s_of_t,r_of_t\n";
  for (const double t : req.t_list) {
    const double s = front_s(kd, t);
    const double r = front_r(sim, t);
    for (int i = 0; i < req.nx; ++i) {
      const double x = s * i / (req.nx - 1);
      const double temp = temperature(sim, kd, x, t);
      out += csv_number(t);
      out += ',';
      out += csv_number(x);
      out += ',';
      out += csv_number(temp);
      out += ',';
      out += csv_number(s);
      out += ',';
      out += csv_number(r);
      out += '\n';
    }
  }
  return out;
}

}  // namespace mushy::io
