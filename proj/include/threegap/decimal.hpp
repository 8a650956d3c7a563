#pragma once

// Decimal rendering of exact values, rounding half away from zero. For
// irrational values the enclosure is refined until the rounding is certain.

#include "threegap/exact.hpp"

#include <string>

namespace threegap {

/// x * 10^decimals rounded half away from zero.
Integer round_decimal(const AlphaLinear& x, const AlphaOracle& alpha, int decimals);

/// Positional notation with exactly `decimals` digits after the point.
std::string format_fixed(const AlphaLinear& x, const AlphaOracle& alpha, int decimals);

/// Positional notation rounded to `digits` significant digits; "0" for zero.
std::string format_significant(const AlphaLinear& x, const AlphaOracle& alpha, int digits);

/// floor(log10 r) for r > 0.
long floor_log10(const Rational& r);

}  // namespace threegap
