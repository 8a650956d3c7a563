#include "threegap/decimal.hpp"

#include <algorithm>
#include <optional>

namespace threegap {

namespace {

Rational pow10(long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

Integer round_half_away(const Rational& r) {
  const Rational half(1, 2);
  if (sgn(r) >= 0) return floor_of(r + half);
  return -floor_of(-r + half);
}

// Calls decide() on enclosures of x of increasing precision until it answers.
template <class Decide>
auto settle(const AlphaLinear& x, const AlphaOracle& alpha, unsigned start_bits, Decide&& decide) {
  if (x.is_rational()) return *decide(Interval{x.u, x.u});
  unsigned bits = std::clamp(start_bits, alpha.base_bits(), alpha.max_bits());
  for (;;) {
    if (auto r = decide(enclose(x, alpha, bits))) return *r;
    if (bits >= alpha.max_bits()) {
      throw PrecisionExhausted("cannot round value to the requested digits with alpha " + alpha.describe());
    }
    bits = std::min(bits * 2, alpha.max_bits());
  }
}

unsigned bits_for_decimals(const AlphaLinear& x, int decimals) {
  const long coeff_bits = static_cast<long>(mpz_sizeinbase(x.v.get_num_mpz_t(), 2)) -
                          static_cast<long>(mpz_sizeinbase(x.v.get_den_mpz_t(), 2)) + 1;
  const long need = static_cast<long>(decimals) * 10 / 3 + std::max(coeff_bits, 0L) + 16;
  return static_cast<unsigned>(std::max(need, 1L));
}

std::string place_point(const Integer& n, long decimals) {
  std::string digits = Integer(abs(n)).get_str();
  const std::string sign = sgn(n) < 0 ? "-" : "";
  if (decimals <= 0) return sign + digits + std::string(static_cast<std::size_t>(-decimals), '0');
  const auto d = static_cast<std::size_t>(decimals);
  if (digits.size() <= d) digits.insert(0, d - digits.size() + 1, '0');
  digits.insert(digits.size() - d, ".");
  return sign + digits;
}

}  // namespace

long floor_log10(const Rational& r) {
  const long bit_gap = static_cast<long>(mpz_sizeinbase(r.get_num_mpz_t(), 2)) -
                       static_cast<long>(mpz_sizeinbase(r.get_den_mpz_t(), 2));
  long e = bit_gap * 30103 / 100000;
  while (pow10(e) > r) --e;
  while (pow10(e + 1) <= r) ++e;
  return e;
}

Integer round_decimal(const AlphaLinear& x, const AlphaOracle& alpha, int decimals) {
  const Rational scale = pow10(decimals);
  return settle(x, alpha, bits_for_decimals(x, decimals), [&](const Interval& e) -> std::optional<Integer> {
    Integer lo = round_half_away(e.lo * scale);
    if (lo == round_half_away(e.hi * scale)) return lo;
    return std::nullopt;
  });
}

std::string format_fixed(const AlphaLinear& x, const AlphaOracle& alpha, int decimals) {
  return place_point(round_decimal(x, alpha, decimals), decimals);
}

std::string format_significant(const AlphaLinear& x, const AlphaOracle& alpha, int digits) {
  if (digits < 1) throw InputError("need at least one significant digit");
  if (x == AlphaLinear{}) return "0";
  const AlphaLinear magnitude = sign(x, alpha) < 0 ? -x : x;
  long exponent = settle(magnitude, alpha, bits_for_decimals(magnitude, 8), [](const Interval& e) -> std::optional<long> {
    if (sgn(e.lo) <= 0) return std::nullopt;
    const long lo = floor_log10(e.lo);
    if (lo == floor_log10(e.hi)) return lo;
    return std::nullopt;
  });
  Integer limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  for (;;) {
    const long decimals = digits - 1 - exponent;
    const Integer n = round_decimal(x, alpha, static_cast<int>(decimals));
    if (abs(n) < limit) return place_point(n, decimals);
    ++exponent;  // rounding carried into a new leading digit
  }
}

}  // namespace threegap
