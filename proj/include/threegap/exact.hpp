#pragma once

// Exact arithmetic on numbers u + v*alpha with rational u, v and a fixed
// irrational alpha. Order decisions go through rational enclosures of alpha
// that are refined until the sign is certain.

#include "threegap/errors.hpp"
#include "threegap/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>

namespace threegap {

struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
};

/// Irrational alpha given in closed form, or as a user-asserted decimal.
class AlphaOracle {
 public:
  /// a + b*sqrt(D), D a positive non-square integer, b != 0.
  struct Quadratic {
    Rational a;
    Rational b;
    Integer discriminant;
  };
  /// r^(1/n), r > 0 not a perfect n-th power, n >= 2.
  struct NthRoot {
    Rational radicand;
    unsigned degree = 2;
  };
  /// A decimal string trusted to within 2^-(declared_bits + 1).
  struct DecimalLiteral {
    std::string digits;
    unsigned declared_bits = 0;
  };
  using Kind = std::variant<Quadratic, NthRoot, DecimalLiteral>;

  /// Comparisons start here and double on every refinement.
  static constexpr unsigned kInitialBits = 64;
  static constexpr unsigned kMaxBits = 1u << 20;

  static AlphaOracle quadratic(Rational a, Rational b, Integer discriminant);
  static AlphaOracle nth_root(Rational radicand, unsigned degree);
  static AlphaOracle decimal(std::string digits, unsigned declared_bits);

  // Common presets.
  static AlphaOracle golden_ratio() { return quadratic(Rational(1, 2), Rational(1, 2), 5); }
  static AlphaOracle sqrt_of(long d) { return quadratic(0, 1, d); }
  static AlphaOracle cube_root_of_15() { return nth_root(15, 3); }

  /// [lo, hi] containing alpha with hi - lo <= 2^-bits. Nested in bits.
  /// Throws PrecisionExhausted when bits exceeds max_bits().
  Interval enclosure(unsigned bits) const;

  /// The enclosure computed at construction (kInitialBits, or the declared
  /// precision of a decimal literal if smaller).
  const Interval& base_enclosure() const { return *base_; }
  unsigned base_bits() const { return base_bits_; }

  unsigned max_bits() const;
  const Kind& kind() const { return kind_; }

  /// Short human-readable label, e.g. "nthroot(15/1,3)".
  std::string describe() const;

  friend bool operator==(const AlphaOracle& a, const AlphaOracle& b);

 private:
  explicit AlphaOracle(Kind kind);
  Interval compute_enclosure(unsigned bits) const;

  struct Cache {
    std::mutex mutex;
    std::map<unsigned, Interval> by_bits;
  };

  Kind kind_;
  std::shared_ptr<const Interval> base_;
  unsigned base_bits_ = 0;
  std::shared_ptr<Cache> cache_;
};

/// The real number u + v*alpha. Since alpha is irrational, two of these
/// denote the same number exactly when their coefficients agree.
struct AlphaLinear {
  Rational u;
  Rational v;

  AlphaLinear() = default;
  AlphaLinear(Rational u_, Rational v_) : u(std::move(u_)), v(std::move(v_)) {}

  static AlphaLinear rational(Rational u) { return {std::move(u), 0}; }
  static AlphaLinear alpha_multiple(Rational v) { return {0, std::move(v)}; }

  bool is_rational() const { return sgn(v) == 0; }

  AlphaLinear& operator+=(const AlphaLinear& o) {
    u += o.u;
    v += o.v;
    return *this;
  }
  AlphaLinear& operator-=(const AlphaLinear& o) {
    u -= o.u;
    v -= o.v;
    return *this;
  }
  friend AlphaLinear operator+(AlphaLinear a, const AlphaLinear& b) { return a += b; }
  friend AlphaLinear operator-(AlphaLinear a, const AlphaLinear& b) { return a -= b; }
  friend AlphaLinear operator-(const AlphaLinear& a) { return {-a.u, -a.v}; }
  friend AlphaLinear operator*(const Rational& s, const AlphaLinear& a) { return {s * a.u, s * a.v}; }

  /// Structural equality, which coincides with equality of values.
  friend bool operator==(const AlphaLinear& a, const AlphaLinear& b) { return a.u == b.u && a.v == b.v; }
};

/// Lexicographic order on (u, v); for ordered containers, not numeric order.
struct StructuralLess {
  bool operator()(const AlphaLinear& a, const AlphaLinear& b) const {
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  }
};

/// Rational enclosure of x using alpha's enclosure at `bits`.
Interval enclose(const AlphaLinear& x, const AlphaOracle& alpha, unsigned bits);

/// Sign of x as -1, 0 or 1.
int sign(const AlphaLinear& x, const AlphaOracle& alpha);

std::strong_ordering compare(const AlphaLinear& x, const AlphaLinear& y, const AlphaOracle& alpha);

/// The integer k with k*s <= x < (k+1)*s. Requires s > 0.
Integer floor_div(const AlphaLinear& x, const Rational& s, const AlphaOracle& alpha);

/// x - floor_div(x, P)*P, the representative of x mod P in [0, P).
AlphaLinear reduce_mod(const AlphaLinear& x, const Rational& modulus, const AlphaOracle& alpha);

/// Orders values numerically; ties (equal values) only on structural equality.
class ValueLess {
 public:
  explicit ValueLess(const AlphaOracle& alpha) : alpha_(&alpha) {}
  bool operator()(const AlphaLinear& a, const AlphaLinear& b) const {
    return compare(a, b, *alpha_) == std::strong_ordering::less;
  }

 private:
  const AlphaOracle* alpha_;
};

}  // namespace threegap
