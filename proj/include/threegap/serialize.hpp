#pragma once

// JSON encodings of configurations and reports.
//
//   Rational     "num/den"
//   AlphaLinear  {"u": "num/den", "v": "num/den"}
//   AlphaOracle  {"kind": "quadratic", "a", "b", "D"} | {"kind": "nthroot", "r", "n"}
//                | {"kind": "decimal", "digits", "declared_precision_bits"}
//   GapConfig    {"alpha", "q", "P", "lambda_multiplier": int | "inf", "variant",
//                 "sequences": [{"p", "k", "n", "N"}, ...]}
//   PwlFunction  {"q", "breakpoints": ["num/den", ...], "pieces": [{"p", "k"}, ...]}
//
// Decoders throw ConfigParseError naming the offending field.

#include "threegap/float_oracle.hpp"
#include "threegap/gap_engine.hpp"
#include "threegap/special_maps.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace threegap {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors report line and column.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& field);

Json alpha_linear_to_json(const AlphaLinear& x);
AlphaLinear alpha_linear_from_json(const Json& j, const std::string& field);

Json alpha_oracle_to_json(const AlphaOracle& alpha);
AlphaOracle alpha_oracle_from_json(const Json& j, const std::string& field);

Json lambda_spec_to_json(const LambdaSpec& lambda);
LambdaSpec lambda_spec_from_json(const Json& j, const std::string& field);

Json gap_config_to_json(const GapConfig& config);
/// Decodes and validates.
GapConfig gap_config_from_json(const Json& j);

Json pwl_function_to_json(const PwlFunction& f);
PwlFunction pwl_function_from_json(const Json& j, const std::string& field);

/// Exact value plus a rounded decimal with `digits` significant digits.
Json value_to_json(const AlphaLinear& x, const AlphaOracle& alpha, int digits);

Json bound_data_to_json(const BoundData& b);
Json gap_report_to_json(const GapReport& report, const AlphaOracle& alpha, int digits);
Json classification_to_json(const IntervalClassification& c, const AlphaOracle& alpha, int digits);
Json nearest_report_to_json(const NearestIntReport& report, const AlphaOracle& alpha, int digits);
Json four_gap_search_to_json(const FourGapSearch& search, const AlphaOracle& alpha, int digits);
Json pwl_report_to_json(const PwlReport& report, const AlphaOracle& alpha, int digits);
Json oracle_result_to_json(const OracleResult& result);
Json oracle_comparison_to_json(const OracleComparison& c);

}  // namespace threegap
