#include "threegap/lambda_frac.hpp"

namespace threegap {

LambdaSpec LambdaSpec::finite(Rational lambda) {
  if (sgn(lambda) <= 0) throw InputError("lambda must be positive, got " + format_rational(lambda));
  LambdaSpec spec;
  spec.value_ = std::move(lambda);
  return spec;
}

std::string to_string(FracVariant variant) {
  return variant == FracVariant::Prime ? "prime" : "double_prime";
}

FracVariant parse_frac_variant(const std::string& text) {
  if (text == "prime") return FracVariant::Prime;
  if (text == "double_prime") return FracVariant::DoublePrime;
  throw InputError("unknown fractional-part variant \"" + text + "\" (expected prime or double_prime)");
}

std::string to_string(const LambdaSpec& lambda) {
  return lambda.is_infinite() ? "inf" : format_rational(lambda.value());
}

LambdaSpec parse_lambda_spec(const std::string& text) {
  if (text == "inf") return LambdaSpec::infinite();
  return LambdaSpec::finite(parse_rational(text));
}

bool in_lattice(const AlphaLinear& x, const Rational& lambda) {
  if (!x.is_rational()) return false;
  const Rational ratio = x.u / lambda;
  return ratio.get_den() == 1;
}

AlphaLinear lambda_floor(const AlphaLinear& x, const Rational& lambda, const AlphaOracle& alpha) {
  return AlphaLinear::rational(Rational(floor_div(x, lambda, alpha)) * lambda);
}

AlphaLinear lambda_roof(const AlphaLinear& x, const Rational& lambda, const AlphaOracle& alpha) {
  AlphaLinear floor = lambda_floor(x, lambda, alpha);
  if (floor == x) return floor;
  floor.u += lambda;
  return floor;
}

AlphaLinear frac_part(const AlphaLinear& x, const LambdaSpec& lambda, FracVariant variant, const AlphaOracle& alpha) {
  if (lambda.is_infinite()) {
    if (variant != FracVariant::Prime) {
      throw InputError("infinite lambda is only defined for the prime fractional part");
    }
    return x;
  }
  const Rational& step = lambda.value();
  if (variant == FracVariant::DoublePrime || sign(x, alpha) >= 0) return x - lambda_floor(x, step, alpha);
  return x - lambda_roof(x, step, alpha);
}

}  // namespace threegap
