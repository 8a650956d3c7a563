#pragma once

// Arbitrary-precision integers and rationals (GMP). mpq_class keeps values
// canonical: gcd(num, den) = 1 and den > 0, so equal values compare equal
// field by field.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace threegap {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "num/den" or a bare integer "num". Throws InputError.
Rational parse_rational(std::string_view text);

/// Always "num/den", even for integers ("2/1"), so the round trip is exact.
std::string format_rational(const Rational& value);

Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);

/// floor(value * 2^shift) and ceil(value * 2^shift).
Integer floor_scaled(const Rational& value, unsigned shift);
Integer ceil_scaled(const Rational& value, unsigned shift);

/// Converts an Integer known to fit into int64. Throws InputError otherwise.
std::int64_t to_int64(const Integer& value);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational r{Integer{static_cast<long>(num)}, Integer{static_cast<long>(den)}};
  r.canonicalize();
  return r;
}

}  // namespace threegap
