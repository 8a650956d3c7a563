#include "threegap/rational.hpp"

#include "threegap/errors.hpp"

#include <cctype>
#include <limits>

namespace threegap {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  if (!is_integer_literal(s)) {
    throw InputError("malformed rational \"" + std::string(whole) + "\" (expected \"num/den\")");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  Integer num = parse_integer(text.substr(0, slash), text);
  Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Integer floor_of(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& value) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer floor_scaled(const Rational& value, unsigned shift) {
  Integer n = value.get_num();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), shift);
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer ceil_scaled(const Rational& value, unsigned shift) {
  Integer n = value.get_num();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), shift);
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), value.get_den_mpz_t());
  return q;
}

std::int64_t to_int64(const Integer& value) {
  if (!value.fits_slong_p()) throw InputError("integer " + value.get_str() + " out of 64-bit range");
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return value.get_si();
}

}  // namespace threegap
