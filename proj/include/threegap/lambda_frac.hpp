#pragma once

// Floors, roofs and fractional parts relative to the lattice
// I_lambda = { n*lambda : n in Z } for a positive rational lambda.

#include "threegap/exact.hpp"

#include <optional>
#include <string>

namespace threegap {

/// A positive rational lambda, or infinity (the identity fractional part).
class LambdaSpec {
 public:
  static LambdaSpec finite(Rational lambda);
  static LambdaSpec infinite() { return LambdaSpec{}; }

  bool is_infinite() const { return !value_.has_value(); }
  /// Precondition: !is_infinite().
  const Rational& value() const { return *value_; }

  friend bool operator==(const LambdaSpec&, const LambdaSpec&) = default;

 private:
  std::optional<Rational> value_;
};

enum class FracVariant {
  Prime,        // x - floor for x >= 0, x - roof for x < 0
  DoublePrime,  // always x - floor
};

std::string to_string(FracVariant variant);
FracVariant parse_frac_variant(const std::string& text);

/// "inf" or "num/den".
std::string to_string(const LambdaSpec& lambda);
LambdaSpec parse_lambda_spec(const std::string& text);

/// Largest element of I_lambda that is <= x.
AlphaLinear lambda_floor(const AlphaLinear& x, const Rational& lambda, const AlphaOracle& alpha);

/// Smallest element of I_lambda that is >= x.
AlphaLinear lambda_roof(const AlphaLinear& x, const Rational& lambda, const AlphaOracle& alpha);

/// The selected lambda-fractional part of x. Infinite lambda returns x and
/// accepts only the Prime variant.
AlphaLinear frac_part(const AlphaLinear& x, const LambdaSpec& lambda, FracVariant variant, const AlphaOracle& alpha);

/// True when x is an element of I_lambda.
bool in_lattice(const AlphaLinear& x, const Rational& lambda);

}  // namespace threegap
