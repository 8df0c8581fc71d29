#pragma once

#include <stdexcept>
#include <string>

namespace mushy {

/// Raised when an intermediate exp(x^2) would leave the representable range.
/// Callers treat it as "this scenario cannot be evaluated", not as a crash.
struct overflow_guard : std::runtime_error {
  explicit overflow_guard(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when bracket expansion exhausts its budget without a sign change.
struct no_bracket : std::runtime_error {
  explicit no_bracket(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when the bisection loop hits its iteration cap. With a valid
/// bracket this indicates a broken objective (NaN plateaus and the like).
struct max_iterations : std::runtime_error {
  explicit max_iterations(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a scenario is missing a coefficient the requested case needs.
struct missing_parameter : std::invalid_argument {
  explicit missing_parameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised on arguments outside an operation's stated domain
/// (non-positive time, a profile point past the melting front, ...).
struct bad_domain : std::domain_error {
  explicit bad_domain(const std::string& what) : std::domain_error(what) {}
};

}  // namespace mushy
