#include "threegap/exact.hpp"

#include <optional>
#include <sstream>

namespace threegap {

namespace {

// Upper bound on ceil(log2 |b|) for b != 0, clamped at zero.
unsigned log2_upper(const Rational& b) {
  const long num_bits = static_cast<long>(mpz_sizeinbase(b.get_num_mpz_t(), 2));
  const long den_bits = static_cast<long>(mpz_sizeinbase(b.get_den_mpz_t(), 2));
  const long bound = num_bits - den_bits + 1;
  return bound > 0 ? static_cast<unsigned>(bound) : 0u;
}

Rational dyadic(const Integer& numerator, unsigned exponent) {
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exponent);
  Rational r(numerator, den);
  r.canonicalize();
  return r;
}

bool is_perfect_power(const Integer& value, unsigned degree) {
  Integer root;
  return mpz_root(root.get_mpz_t(), value.get_mpz_t(), degree) != 0;
}

Rational parse_decimal(const std::string& digits, std::size_t& fraction_digits) {
  std::size_t i = 0;
  bool negative = false;
  if (i < digits.size() && (digits[i] == '-' || digits[i] == '+')) {
    negative = digits[i] == '-';
    ++i;
  }
  std::string mantissa;
  bool seen_point = false;
  fraction_digits = 0;
  for (; i < digits.size(); ++i) {
    const char ch = digits[i];
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      mantissa.push_back(ch);
      if (seen_point) ++fraction_digits;
    } else {
      throw InputError("malformed decimal literal \"" + digits + "\"");
    }
  }
  if (mantissa.empty()) throw InputError("malformed decimal literal \"" + digits + "\"");
  Integer num(mantissa, 10);
  if (negative) num = -num;
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, fraction_digits);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

template <class Decide>
auto refine(const AlphaOracle& alpha, Decide&& decide) {
  unsigned bits = alpha.base_bits();
  const unsigned cap = alpha.max_bits();
  for (;;) {
    auto result = bits == alpha.base_bits() ? decide(alpha.base_enclosure()) : decide(alpha.enclosure(bits));
    if (result) return *result;
    if (bits >= cap) {
      throw PrecisionExhausted("alpha " + alpha.describe() + " cannot be resolved within " + std::to_string(cap) +
                               " bits");
    }
    bits = bits > cap / 2 ? cap : bits * 2;
  }
}

}  // namespace

AlphaOracle::AlphaOracle(Kind kind) : kind_(std::move(kind)), cache_(std::make_shared<Cache>()) {
  base_bits_ = std::min(kInitialBits, max_bits());
  base_ = std::make_shared<const Interval>(compute_enclosure(base_bits_));
}

AlphaOracle AlphaOracle::quadratic(Rational a, Rational b, Integer discriminant) {
  if (sgn(b) == 0) throw InputError("quadratic alpha needs b != 0");
  if (discriminant <= 0) throw InputError("quadratic alpha needs a positive discriminant");
  if (mpz_perfect_square_p(discriminant.get_mpz_t())) {
    throw InputError("quadratic alpha needs a non-square discriminant, got " + discriminant.get_str());
  }
  return AlphaOracle(Quadratic{std::move(a), std::move(b), std::move(discriminant)});
}

AlphaOracle AlphaOracle::nth_root(Rational radicand, unsigned degree) {
  if (degree < 2) throw InputError("nth-root alpha needs degree >= 2");
  if (sgn(radicand) <= 0) throw InputError("nth-root alpha needs a positive radicand");
  if (is_perfect_power(radicand.get_num(), degree) && is_perfect_power(radicand.get_den(), degree)) {
    throw InputError("radicand " + format_rational(radicand) + " is a perfect " + std::to_string(degree) +
                     "-th power, so its root is rational");
  }
  return AlphaOracle(NthRoot{std::move(radicand), degree});
}

AlphaOracle AlphaOracle::decimal(std::string digits, unsigned declared_bits) {
  std::size_t fraction_digits = 0;
  parse_decimal(digits, fraction_digits);
  if (declared_bits == 0) throw InputError("decimal alpha needs declared_precision_bits >= 1");
  // A literal with k fraction digits cannot carry more than log2(10^k) bits.
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, fraction_digits);
  const std::size_t supported = mpz_sizeinbase(scale.get_mpz_t(), 2) - 1;
  if (declared_bits > supported) {
    throw InputError("decimal alpha \"" + digits + "\" supports at most " + std::to_string(supported) +
                     " bits, " + std::to_string(declared_bits) + " declared");
  }
  return AlphaOracle(DecimalLiteral{std::move(digits), declared_bits});
}

unsigned AlphaOracle::max_bits() const {
  if (const auto* d = std::get_if<DecimalLiteral>(&kind_)) return d->declared_bits;
  return kMaxBits;
}

Interval AlphaOracle::enclosure(unsigned bits) const {
  if (bits == 0) throw InputError("enclosure needs bits >= 1");
  if (bits > max_bits()) {
    throw PrecisionExhausted("alpha " + describe() + " supplies at most " + std::to_string(max_bits()) +
                             " bits, " + std::to_string(bits) + " requested");
  }
  if (bits == base_bits_) return *base_;
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->by_bits.find(bits);
  if (it == cache_->by_bits.end()) it = cache_->by_bits.emplace(bits, compute_enclosure(bits)).first;
  return it->second;
}

Interval AlphaOracle::compute_enclosure(unsigned bits) const {
  return std::visit(
      [bits](const auto& k) -> Interval {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Quadratic>) {
          // floor(sqrt(D) * 2^s) by integer square root; D non-square keeps it strict.
          const unsigned shift = bits + log2_upper(k.b);
          Integer scaled = k.discriminant;
          mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * shift);
          Integer root;
          mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
          const Rational lo = dyadic(root, shift);
          const Rational hi = dyadic(root + 1, shift);
          if (sgn(k.b) > 0) return {k.a + k.b * lo, k.a + k.b * hi};
          return {k.a + k.b * hi, k.a + k.b * lo};
        } else if constexpr (std::is_same_v<T, NthRoot>) {
          // r = a/b, r^(1/n) = (a b^(n-1))^(1/n) / b.
          const Integer& a = k.radicand.get_num();
          const Integer& b = k.radicand.get_den();
          Integer scaled;
          mpz_pow_ui(scaled.get_mpz_t(), b.get_mpz_t(), k.degree - 1);
          scaled *= a;
          mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(k.degree) * bits);
          Integer root;
          mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), k.degree);
          const Rational lo = dyadic(root, bits) / b;
          const Rational hi = dyadic(root + 1, bits) / b;
          return {lo, hi};
        } else {
          std::size_t ignored = 0;
          const Rational centre = parse_decimal(k.digits, ignored);
          const Rational half_width = dyadic(1, k.declared_bits + 1);
          return {centre - half_width, centre + half_width};
        }
      },
      kind_);
}

std::string AlphaOracle::describe() const {
  std::ostringstream out;
  std::visit(
      [&out](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Quadratic>) {
          out << "quadratic(" << format_rational(k.a) << "," << format_rational(k.b) << "," << k.discriminant << ")";
        } else if constexpr (std::is_same_v<T, NthRoot>) {
          out << "nthroot(" << format_rational(k.radicand) << "," << k.degree << ")";
        } else {
          out << "decimal(" << k.digits << "," << k.declared_bits << ")";
        }
      },
      kind_);
  return out.str();
}

bool operator==(const AlphaOracle& a, const AlphaOracle& b) {
  if (a.kind_.index() != b.kind_.index()) return false;
  return std::visit(
      [&b](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        const auto& o = std::get<T>(b.kind_);
        if constexpr (std::is_same_v<T, AlphaOracle::Quadratic>) {
          return k.a == o.a && k.b == o.b && k.discriminant == o.discriminant;
        } else if constexpr (std::is_same_v<T, AlphaOracle::NthRoot>) {
          return k.radicand == o.radicand && k.degree == o.degree;
        } else {
          return k.digits == o.digits && k.declared_bits == o.declared_bits;
        }
      },
      a.kind_);
}

namespace {

Interval enclose_with(const AlphaLinear& x, const Interval& a) {
  if (sgn(x.v) >= 0) return {x.u + x.v * a.lo, x.u + x.v * a.hi};
  return {x.u + x.v * a.hi, x.u + x.v * a.lo};
}

}  // namespace

Interval enclose(const AlphaLinear& x, const AlphaOracle& alpha, unsigned bits) {
  if (x.is_rational()) return {x.u, x.u};
  return enclose_with(x, alpha.enclosure(bits));
}

int sign(const AlphaLinear& x, const AlphaOracle& alpha) {
  if (x.is_rational()) return sgn(x.u);
  return refine(alpha, [&x](const Interval& a) -> std::optional<int> {
    const Interval e = enclose_with(x, a);
    if (sgn(e.lo) > 0) return 1;
    if (sgn(e.hi) < 0) return -1;
    return std::nullopt;
  });
}

std::strong_ordering compare(const AlphaLinear& x, const AlphaLinear& y, const AlphaOracle& alpha) {
  if (x == y) return std::strong_ordering::equal;
  const int s = sign(x - y, alpha);
  return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

Integer floor_div(const AlphaLinear& x, const Rational& s, const AlphaOracle& alpha) {
  if (sgn(s) <= 0) throw InputError("floor_div needs a positive divisor");
  if (x.is_rational()) return floor_of(x.u / s);
  const AlphaLinear scaled{x.u / s, x.v / s};
  // scaled is irrational, so it is never an integer and refinement settles.
  return refine(alpha, [&scaled](const Interval& a) -> std::optional<Integer> {
    const Interval e = enclose_with(scaled, a);
    Integer lo = floor_of(e.lo);
    if (lo == floor_of(e.hi)) return lo;
    return std::nullopt;
  });
}

AlphaLinear reduce_mod(const AlphaLinear& x, const Rational& modulus, const AlphaOracle& alpha) {
  const Integer k = floor_div(x, modulus, alpha);
  if (k == 0) return x;
  return {x.u - Rational(k) * modulus, x.v};
}

}  // namespace threegap
