#pragma once

// Brute-force cross-check of the exact engine in high-precision binary
// floating point (MPFR). Shares nothing with the enclosure machinery beyond
// the configuration it reads; it is a diagnostic, never a source of truth.

#include "threegap/gap_engine.hpp"

#include <string>
#include <vector>

namespace threegap {

struct OracleResult {
  unsigned digits = 0;
  /// Gap multiset in scientific notation with `digits` significant digits,
  /// increasing.
  std::vector<std::string> gaps_decimal;
  std::vector<std::string> warnings;
};

/// Recomputes all points at `digits` decimal digits, sorts with a
/// 10^-(digits-5) tie tolerance and returns the gaps. digits >= 30.
OracleResult float_oracle_gaps(const GapConfig& config, unsigned digits);

struct OracleComparison {
  bool gaps_agree = false;
  bool distinct_agree = false;
  std::size_t exact_count = 0;
  std::size_t oracle_count = 0;
  std::size_t exact_distinct = 0;
  std::size_t oracle_distinct = 0;
  /// Largest |exact - oracle| over matched gaps, as a decimal string.
  std::string max_abs_difference;

  bool ok() const { return gaps_agree && distinct_agree; }
};

/// Sorts both multisets and compares them elementwise to 10^-agree_digits;
/// oracle gaps within that tolerance count as one distinct value.
OracleComparison compare_with_oracle(const GapReport& exact, const AlphaOracle& alpha, const OracleResult& oracle,
                                     unsigned agree_digits);

}  // namespace threegap
