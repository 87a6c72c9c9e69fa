#pragma once

// Guard limits for the factorially growing enumerations and the symbolic
// engine, with environment-variable overrides (prefix WMM_).

#include <optional>
#include <string>

namespace wmm {

struct Caps {
  int permutation_cap = 10;    ///< n! enumeration guard (permutation sums)
  int injection_cap = 12;      ///< injections [m] -> [n] guard on n
  int word_cap = 10;           ///< m + |v| bound for symbolic moment words
  int oracle_word_cap = 8;     ///< m + |v| bound when a permutation oracle runs too
  int polarization_cap = 20;   ///< 2^n sign-pattern guard
  int trace_degree_cap = 64;   ///< covariance power/trace cache bound

  /// Defaults overridden by WMM_PERMUTATION_CAP, WMM_INJECTION_CAP,
  /// WMM_WORD_CAP, WMM_ORACLE_WORD_CAP, WMM_POLARIZATION_CAP,
  /// WMM_TRACE_DEGREE_CAP when set to positive integers.
  static Caps from_env();
};

/// Positive-integer environment lookup helper (std::nullopt when unset or
/// not a positive integer).
std::optional<int> env_positive_int(const std::string& name);

}  // namespace wmm
