#include "threegap/lambda_frac.hpp"
#include "threegap/errors.hpp"

#include <gtest/gtest.h>

#include <random>

namespace threegap {
namespace {

using std::strong_ordering;

AlphaLinear rat(long num, long den = 1) { return AlphaLinear::rational(make_rational(num, den)); }

TEST(LambdaFloor, Examples) {
  const auto alpha = AlphaOracle::cube_root_of_15();
  EXPECT_EQ(lambda_floor(rat(27, 10), 1, alpha), rat(2));
  EXPECT_EQ(lambda_floor(rat(27, 10), make_rational(1, 2), alpha), rat(5, 2));
  EXPECT_EQ(lambda_floor(AlphaLinear::alpha_multiple(1), 2, alpha), rat(2));
  EXPECT_EQ(lambda_floor(rat(-1, 3), make_rational(1, 2), alpha), rat(-1, 2));
}

TEST(LambdaRoof, Examples) {
  const auto sqrt2 = AlphaOracle::sqrt_of(2);
  EXPECT_EQ(lambda_roof(rat(27, 10), 1, sqrt2), rat(3));
  EXPECT_EQ(lambda_roof(rat(2), 1, sqrt2), rat(2));
  EXPECT_EQ(lambda_roof(AlphaLinear::alpha_multiple(-1), 1, sqrt2), rat(-1));
  EXPECT_EQ(lambda_roof(AlphaLinear::alpha_multiple(1), make_rational(3, 2), sqrt2), rat(3, 2));
}

TEST(FracPart, Examples) {
  const auto golden = AlphaOracle::golden_ratio();
  const auto one = LambdaSpec::finite(1);
  EXPECT_EQ(frac_part(rat(-3, 10), one, FracVariant::DoublePrime, golden), rat(7, 10));
  EXPECT_EQ(frac_part(rat(-3, 10), one, FracVariant::Prime, golden), rat(-3, 10));
  EXPECT_EQ(frac_part(AlphaLinear::alpha_multiple(2), one, FracVariant::DoublePrime, golden),
            AlphaLinear(-3, 2));
  EXPECT_THROW(frac_part(rat(1), LambdaSpec::infinite(), FracVariant::DoublePrime, golden), InputError);
}

TEST(FracPart, InvariantsOverRandomInputs) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 7);
  const auto alpha = AlphaOracle::nth_root(2, 3);
  for (int i = 0; i < 400; ++i) {
    const AlphaLinear x(make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)));
    const Rational step = make_rational(1 + i % 4, 1 + i % 3);
    const auto lambda = LambdaSpec::finite(step);
    const AlphaLinear lam = AlphaLinear::rational(step);

    const AlphaLinear dp = frac_part(x, lambda, FracVariant::DoublePrime, alpha);
    EXPECT_GE(sign(dp, alpha), 0);
    EXPECT_EQ(compare(dp, lam, alpha), strong_ordering::less);
    EXPECT_TRUE(in_lattice(x - dp, step));

    const AlphaLinear p = frac_part(x, lambda, FracVariant::Prime, alpha);
    EXPECT_EQ(compare(-lam, p, alpha), strong_ordering::less);
    EXPECT_EQ(compare(p, lam, alpha), strong_ordering::less);
    EXPECT_TRUE(sign(p, alpha) == 0 || sign(p, alpha) == sign(x, alpha));
    EXPECT_TRUE(in_lattice(x - p, step));

    EXPECT_EQ(frac_part(x, LambdaSpec::infinite(), FracVariant::Prime, alpha), x);
  }
}

TEST(LambdaSpec, TextRoundTrip) {
  EXPECT_TRUE(parse_lambda_spec("inf").is_infinite());
  EXPECT_EQ(parse_lambda_spec("3/2"), LambdaSpec::finite(make_rational(3, 2)));
  EXPECT_EQ(to_string(LambdaSpec::finite(2)), "2/1");
  EXPECT_EQ(to_string(LambdaSpec::infinite()), "inf");
  EXPECT_EQ(parse_frac_variant("prime"), FracVariant::Prime);
  EXPECT_EQ(to_string(FracVariant::DoublePrime), "double_prime");
  EXPECT_THROW(parse_frac_variant("triple"), InputError);
  EXPECT_THROW(LambdaSpec::finite(0), InputError);
}

}  // namespace
}  // namespace threegap
