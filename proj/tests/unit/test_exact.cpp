#include "threegap/decimal.hpp"
#include "threegap/errors.hpp"
#include "threegap/exact.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

namespace threegap {
namespace {

using std::strong_ordering;

AlphaLinear lin(long u_num, long u_den, long v_num, long v_den) {
  return {make_rational(u_num, u_den), make_rational(v_num, v_den)};
}

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), make_rational(-7));
  EXPECT_EQ(parse_rational("3/-6"), make_rational(-1, 2));
  EXPECT_EQ(format_rational(make_rational(4, 2)), "2/1");
  EXPECT_EQ(format_rational(make_rational(-3, 9)), "-1/3");
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("1.5"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
  EXPECT_THROW(parse_rational(" 1/2"), InputError);
}

TEST(Rational, FloorAndCeil) {
  EXPECT_EQ(floor_of(make_rational(-3, 10)), -1);
  EXPECT_EQ(ceil_of(make_rational(-3, 10)), 0);
  EXPECT_EQ(floor_of(make_rational(27, 10)), 2);
  EXPECT_EQ(ceil_of(make_rational(4)), 4);
  EXPECT_EQ(floor_scaled(make_rational(1, 3), 4), 5);  // 16/3
  EXPECT_EQ(ceil_scaled(make_rational(1, 3), 4), 6);
}

TEST(AlphaOracle, RejectsRationalAlphas) {
  EXPECT_THROW(AlphaOracle::quadratic(0, 1, 4), InputError);
  EXPECT_THROW(AlphaOracle::quadratic(1, 0, 2), InputError);
  EXPECT_THROW(AlphaOracle::nth_root(8, 3), InputError);
  EXPECT_THROW(AlphaOracle::nth_root(make_rational(4, 9), 2), InputError);
  EXPECT_THROW(AlphaOracle::nth_root(-2, 2), InputError);
  EXPECT_THROW(AlphaOracle::decimal("1.5x", 20), InputError);
}

TEST(AlphaOracle, SqrtTwoEnclosureAtFourBits) {
  const auto alpha = AlphaOracle::nth_root(2, 2);
  const Interval e = alpha.enclosure(4);
  EXPECT_LE(e.width(), make_rational(1, 16));
  EXPECT_LE(e.lo * e.lo, 2);
  EXPECT_GE(e.hi * e.hi, 2);
}

TEST(AlphaOracle, CubeRootOfFifteenEnclosure) {
  const auto alpha = AlphaOracle::cube_root_of_15();
  const Interval e = alpha.enclosure(30);
  EXPECT_LE(e.width(), Rational(1) / Rational(Integer(1) << 30));
  EXPECT_LE(e.lo * e.lo * e.lo, 15);
  EXPECT_GE(e.hi * e.hi * e.hi, 15);
  // 15^(1/3) = 2.46621207433..., so [2.4662120743, 2.4662120744] lies inside.
  EXPECT_LE(e.lo, make_rational(24662120743LL, 10000000000LL));
  EXPECT_GE(e.hi, make_rational(24662120744LL, 10000000000LL));
}

TEST(AlphaOracle, EnclosuresNest) {
  for (const auto& alpha : {AlphaOracle::golden_ratio(), AlphaOracle::cube_root_of_15(), AlphaOracle::nth_root(2, 5),
                            AlphaOracle::quadratic(make_rational(-1, 3), make_rational(1, 3), 13)}) {
    Interval previous = alpha.enclosure(8);
    for (unsigned bits = 16; bits <= 2048; bits *= 2) {
      const Interval next = alpha.enclosure(bits);
      EXPECT_TRUE(previous.contains(next)) << alpha.describe() << " at " << bits;
      EXPECT_LE(next.width() * Rational(Integer(1) << bits), 1) << alpha.describe();
      previous = next;
    }
  }
}

TEST(AlphaOracle, DecimalLiteralIsLimitedByDeclaredPrecision) {
  const auto alpha = AlphaOracle::decimal("1.4142135623730950488", 40);
  EXPECT_EQ(compare(AlphaLinear::alpha_multiple(1), AlphaLinear::rational(make_rational(141, 100)), alpha),
            strong_ordering::greater);
  // 1.41421356237309504880 is the literal itself: undecidable at 40 bits.
  EXPECT_THROW(compare(AlphaLinear::alpha_multiple(1),
                       AlphaLinear::rational(parse_rational("14142135623730950488/10000000000000000000")), alpha),
               PrecisionExhausted);
}

TEST(Compare, SpecExamples) {
  const auto golden = AlphaOracle::golden_ratio();
  const auto sqrt2 = AlphaOracle::sqrt_of(2);
  EXPECT_EQ(compare(lin(1, 2, 0, 1), lin(1, 2, 0, 1), golden), strong_ordering::equal);
  EXPECT_EQ(compare(lin(0, 1, 1, 1), lin(1, 1, 0, 1), sqrt2), strong_ordering::greater);
  EXPECT_EQ(compare(lin(1, 1, 1, 1), lin(0, 1, 2, 1), golden), strong_ordering::less);
}

TEST(Compare, ValuesVeryCloseTogetherNeedRefinement) {
  // Continued-fraction convergents of sqrt(2), within 1e-11 on either side.
  const auto sqrt2 = AlphaOracle::sqrt_of(2);
  EXPECT_EQ(compare(AlphaLinear::alpha_multiple(1), AlphaLinear::rational(make_rational(665857, 470832)), sqrt2),
            strong_ordering::less);
  EXPECT_EQ(compare(AlphaLinear::alpha_multiple(1), AlphaLinear::rational(make_rational(47321, 33461)), sqrt2),
            strong_ordering::greater);
}

TEST(Compare, TrichotomyAndStructuralEquality) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
  const auto alpha = AlphaOracle::cube_root_of_15();
  auto random_value = [&] { return lin(num(rng), den(rng), num(rng), den(rng)); };
  for (int i = 0; i < 1000; ++i) {
    const AlphaLinear x = random_value();
    const AlphaLinear y = i % 4 == 0 ? x : random_value();
    const auto xy = compare(x, y, alpha);
    const auto yx = compare(y, x, alpha);
    EXPECT_EQ(xy == strong_ordering::equal, x == y);
    EXPECT_EQ(xy == strong_ordering::less, yx == strong_ordering::greater);
    const long double dx = testing::value_ld(x, alpha), dy = testing::value_ld(y, alpha);
    if (std::fabs(dx - dy) > 1e-12L) EXPECT_EQ(xy == strong_ordering::less, dx < dy);
  }
}

TEST(FloorDiv, SpecExamples) {
  const auto sqrt2 = AlphaOracle::sqrt_of(2);
  EXPECT_EQ(floor_div(lin(27, 10, 0, 1), 1, sqrt2), 2);
  EXPECT_EQ(floor_div(lin(-3, 10, 0, 1), 1, sqrt2), -1);
  EXPECT_EQ(floor_div(lin(0, 1, 1, 1), make_rational(1, 2), sqrt2), 2);
  EXPECT_EQ(floor_div(lin(-3, 1, 2, 1), 1, AlphaOracle::golden_ratio()), 0);
  EXPECT_EQ(floor_div(lin(0, 1, -1, 1), 1, sqrt2), -2);
}

TEST(ReduceMod, SpecExamples) {
  const auto golden = AlphaOracle::golden_ratio();
  EXPECT_EQ(reduce_mod(lin(5, 2, 0, 1), 1, golden), lin(1, 2, 0, 1));
  EXPECT_EQ(reduce_mod(lin(0, 1, 2, 1), 1, golden), lin(-3, 1, 2, 1));
  EXPECT_EQ(reduce_mod(lin(-3, 10, 0, 1), 1, golden), lin(7, 10, 0, 1));
}

TEST(ReduceMod, IdempotentAndShiftInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-60, 60), den(1, 9), shift(-20, 20);
  const auto alpha = AlphaOracle::golden_ratio();
  for (int i = 0; i < 300; ++i) {
    const AlphaLinear x = lin(num(rng), den(rng), num(rng), den(rng));
    const Rational P = make_rational(1 + i % 5, 1 + i % 3);
    const AlphaLinear r = reduce_mod(x, P, alpha);
    EXPECT_GE(sign(r, alpha), 0);
    EXPECT_EQ(compare(r, AlphaLinear::rational(P), alpha), strong_ordering::less);
    EXPECT_EQ(reduce_mod(r, P, alpha), r);
    EXPECT_EQ(reduce_mod(x + AlphaLinear::rational(Rational(shift(rng)) * P), P, alpha), r);
  }
}

TEST(Decimal, RoundsHalfAwayFromZero) {
  EXPECT_EQ(format_fixed(lin(1, 8, 0, 1), AlphaOracle::golden_ratio(), 2), "0.13");
  EXPECT_EQ(format_fixed(lin(-1, 8, 0, 1), AlphaOracle::golden_ratio(), 2), "-0.13");
  EXPECT_EQ(format_fixed(lin(-3, 1, 2, 1), AlphaOracle::golden_ratio(), 6), "0.236068");
  EXPECT_EQ(format_significant(AlphaLinear{}, AlphaOracle::golden_ratio(), 5), "0");
  EXPECT_EQ(format_significant(lin(0, 1, 1, 1), AlphaOracle::sqrt_of(2), 12), "1.41421356237");
  EXPECT_EQ(format_significant(lin(1, 1000, 0, 1), AlphaOracle::sqrt_of(2), 3), "0.00100");
  EXPECT_EQ(format_significant(lin(9999, 1000, 0, 1), AlphaOracle::sqrt_of(2), 3), "10.0");
  EXPECT_EQ(floor_log10(make_rational(1, 1000)), -3);
  EXPECT_EQ(floor_log10(make_rational(999)), 2);
}

}  // namespace
}  // namespace threegap
