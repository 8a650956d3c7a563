#include "threegap/serialize.hpp"

#include "threegap/decimal.hpp"

#include <fstream>
#include <sstream>

namespace threegap {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigParseError("field '" + field + "': " + message);
}

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

const Json& require(const Json& j, const std::string& key, const std::string& parent) {
  if (!j.is_object()) fail(parent.empty() ? "<root>" : parent, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(join(parent, key), "missing");
  return *it;
}

std::int64_t int_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_unsigned()) {
    const auto u = j.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) fail(field, "integer out of range");
    return static_cast<std::int64_t>(u);
  }
  fail(field, "expected an integer");
}

std::string string_from_json(const Json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a string");
  return j.get<std::string>();
}

Integer big_integer_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Integer(static_cast<long>(int_from_json(j, field)));
  const std::string s = string_from_json(j, field);
  try {
    const Rational r = parse_rational(s);
    if (r.get_den() != 1) fail(field, "expected an integer");
    return r.get_num();
  } catch (const ConfigParseError&) {
    throw;
  } catch (const InputError& e) {
    fail(field, e.what());
  }
}

Json point_to_json(const LabeledPoint& pt, const AlphaOracle& alpha, int digits) {
  Json out;
  out["i"] = pt.seq;
  out["m"] = pt.m;
  out["gamma"] = value_to_json(pt.gamma, alpha, digits);
  return out;
}

Json values_to_json(const std::vector<AlphaLinear>& values, const AlphaOracle& alpha, int digits) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(value_to_json(v, alpha, digits));
  return out;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                           ": invalid JSON (" + e.what() + ")");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

Json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(static_cast<long>(int_from_json(j, field)));
  const std::string s = string_from_json(j, field);
  try {
    return parse_rational(s);
  } catch (const InputError& e) {
    fail(field, e.what());
  }
}

Json alpha_linear_to_json(const AlphaLinear& x) {
  Json out;
  out["u"] = format_rational(x.u);
  out["v"] = format_rational(x.v);
  return out;
}

AlphaLinear alpha_linear_from_json(const Json& j, const std::string& field) {
  return {rational_from_json(require(j, "u", field), join(field, "u")),
          rational_from_json(require(j, "v", field), join(field, "v"))};
}

Json alpha_oracle_to_json(const AlphaOracle& alpha) {
  Json out;
  std::visit(
      [&out](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, AlphaOracle::Quadratic>) {
          out["kind"] = "quadratic";
          out["a"] = format_rational(k.a);
          out["b"] = format_rational(k.b);
          out["D"] = k.discriminant.get_str();
        } else if constexpr (std::is_same_v<T, AlphaOracle::NthRoot>) {
          out["kind"] = "nthroot";
          out["r"] = format_rational(k.radicand);
          out["n"] = k.degree;
        } else {
          out["kind"] = "decimal";
          out["digits"] = k.digits;
          out["declared_precision_bits"] = k.declared_bits;
        }
      },
      alpha.kind());
  return out;
}

AlphaOracle alpha_oracle_from_json(const Json& j, const std::string& field) {
  const std::string kind = string_from_json(require(j, "kind", field), join(field, "kind"));
  try {
    if (kind == "quadratic") {
      return AlphaOracle::quadratic(rational_from_json(require(j, "a", field), join(field, "a")),
                                    rational_from_json(require(j, "b", field), join(field, "b")),
                                    big_integer_from_json(require(j, "D", field), join(field, "D")));
    }
    if (kind == "nthroot") {
      const std::int64_t n = int_from_json(require(j, "n", field), join(field, "n"));
      if (n < 2 || n > 1'000'000) fail(join(field, "n"), "degree must be an integer >= 2");
      return AlphaOracle::nth_root(rational_from_json(require(j, "r", field), join(field, "r")),
                                   static_cast<unsigned>(n));
    }
    if (kind == "decimal") {
      const std::int64_t bits =
          int_from_json(require(j, "declared_precision_bits", field), join(field, "declared_precision_bits"));
      if (bits < 1 || bits > AlphaOracle::kMaxBits) fail(join(field, "declared_precision_bits"), "out of range");
      return AlphaOracle::decimal(string_from_json(require(j, "digits", field), join(field, "digits")),
                                  static_cast<unsigned>(bits));
    }
  } catch (const ConfigParseError&) {
    throw;
  } catch (const InputError& e) {
    fail(field, e.what());
  }
  fail(join(field, "kind"), "unknown alpha kind \"" + kind + "\" (expected quadratic, nthroot or decimal)");
}

Json lambda_spec_to_json(const LambdaSpec& lambda) { return to_string(lambda); }

LambdaSpec lambda_spec_from_json(const Json& j, const std::string& field) {
  try {
    return parse_lambda_spec(string_from_json(j, field));
  } catch (const ConfigParseError&) {
    throw;
  } catch (const InputError& e) {
    fail(field, e.what());
  }
}

Json gap_config_to_json(const GapConfig& config) {
  Json out;
  out["alpha"] = alpha_oracle_to_json(config.alpha);
  out["q"] = config.q;
  out["P"] = format_rational(config.P);
  if (config.lambda_multiplier) {
    out["lambda_multiplier"] = *config.lambda_multiplier;
  } else {
    out["lambda_multiplier"] = "inf";
  }
  out["variant"] = to_string(config.variant);
  Json seqs = Json::array();
  for (const auto& s : config.sequences) {
    Json e;
    e["p"] = s.p;
    e["k"] = alpha_linear_to_json(s.k);
    e["n"] = s.n;
    e["N"] = s.N;
    seqs.push_back(std::move(e));
  }
  out["sequences"] = std::move(seqs);
  return out;
}

GapConfig gap_config_from_json(const Json& j) {
  GapConfig config{alpha_oracle_from_json(require(j, "alpha", ""), "alpha")};
  if (j.contains("q")) config.q = int_from_json(j["q"], "q");
  if (j.contains("P")) config.P = rational_from_json(j["P"], "P");
  if (j.contains("lambda_multiplier")) {
    const Json& t = j["lambda_multiplier"];
    if (t.is_string()) {
      if (t.get<std::string>() != "inf") fail("lambda_multiplier", "expected a positive integer or \"inf\"");
      config.lambda_multiplier.reset();
    } else {
      config.lambda_multiplier = int_from_json(t, "lambda_multiplier");
    }
  }
  if (j.contains("variant")) {
    try {
      config.variant = parse_frac_variant(string_from_json(j["variant"], "variant"));
    } catch (const ConfigParseError&) {
      throw;
    } catch (const InputError& e) {
      fail("variant", e.what());
    }
  }
  const Json& seqs = require(j, "sequences", "");
  if (!seqs.is_array()) fail("sequences", "expected an array");
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    const std::string field = "sequences[" + std::to_string(i) + "]";
    const Json& e = seqs[i];
    SequenceSpec s;
    s.p = int_from_json(require(e, "p", field), join(field, "p"));
    s.k = e.contains("k") ? alpha_linear_from_json(e["k"], join(field, "k")) : AlphaLinear{};
    s.n = e.contains("n") ? int_from_json(e["n"], join(field, "n")) : 0;
    s.N = int_from_json(require(e, "N", field), join(field, "N"));
    config.sequences.push_back(std::move(s));
  }
  config.validate();
  return config;
}

Json pwl_function_to_json(const PwlFunction& f) {
  Json out;
  out["q"] = f.q();
  Json bps = Json::array();
  for (const auto& b : f.breakpoints()) bps.push_back(format_rational(b));
  out["breakpoints"] = std::move(bps);
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) {
    Json e;
    e["p"] = p.p;
    e["k"] = alpha_linear_to_json(p.k);
    pieces.push_back(std::move(e));
  }
  out["pieces"] = std::move(pieces);
  return out;
}

PwlFunction pwl_function_from_json(const Json& j, const std::string& field) {
  const std::int64_t q = j.contains("q") ? int_from_json(j["q"], join(field, "q")) : 1;
  std::vector<Rational> breakpoints;
  if (j.contains("breakpoints")) {
    const Json& bps = j["breakpoints"];
    if (!bps.is_array()) fail(join(field, "breakpoints"), "expected an array");
    for (std::size_t i = 0; i < bps.size(); ++i) {
      breakpoints.push_back(rational_from_json(bps[i], join(field, "breakpoints[" + std::to_string(i) + "]")));
    }
  }
  const Json& ps = require(j, "pieces", field);
  if (!ps.is_array()) fail(join(field, "pieces"), "expected an array");
  std::vector<PwlPiece> pieces;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::string f = join(field, "pieces[" + std::to_string(i) + "]");
    PwlPiece piece;
    piece.p = int_from_json(require(ps[i], "p", f), join(f, "p"));
    piece.k = ps[i].contains("k") ? alpha_linear_from_json(ps[i]["k"], join(f, "k")) : AlphaLinear{};
    pieces.push_back(std::move(piece));
  }
  return PwlFunction(q, std::move(breakpoints), std::move(pieces));
}

Json value_to_json(const AlphaLinear& x, const AlphaOracle& alpha, int digits) {
  Json out = alpha_linear_to_json(x);
  out["decimal"] = format_significant(x, alpha, digits);
  return out;
}

Json bound_data_to_json(const BoundData& b) {
  Json out;
  out["ell"] = b.ell;
  out["ell0"] = format_rational(b.ell0);
  out["c_list"] = b.c_list;
  out["c"] = b.c;
  out["bound"] = b.bound;
  return out;
}

Json gap_report_to_json(const GapReport& report, const AlphaOracle& alpha, int digits) {
  Json out;
  out["P"] = format_rational(report.P);
  out["N_total"] = report.total_points();
  out["bound"] = bound_data_to_json(report.bound_data);
  out["distinct_count"] = report.distinct_gaps.size();
  out["bound_satisfied"] = report.bound_satisfied;
  out["distinct_gaps"] = values_to_json(report.distinct_gaps, alpha, digits);
  out["gaps"] = values_to_json(report.gaps, alpha, digits);
  Json points = Json::array();
  for (const auto& pt : report.sorted_points) points.push_back(point_to_json(pt, alpha, digits));
  out["points"] = std::move(points);
  return out;
}

Json classification_to_json(const IntervalClassification& c, const AlphaOracle& alpha, int digits) {
  Json out;
  out["rigid_count"] = c.rigid_count;
  out["rigid_within_bound"] = c.rigid_within_bound;
  out["lengths_match"] = c.lengths_match;
  out["orbits_acyclic"] = c.orbits_acyclic;
  out["longest_orbit"] = c.longest_orbit;
  out["rigid_lengths"] = values_to_json(c.rigid_lengths, alpha, digits);
  Json starts = Json::array();
  for (const auto& pt : c.start_points) starts.push_back(point_to_json(pt, alpha, digits));
  out["start_points"] = std::move(starts);
  Json finishes = Json::array();
  for (const auto& pt : c.finish_points) finishes.push_back(point_to_json(pt, alpha, digits));
  out["finish_points"] = std::move(finishes);
  Json intervals = Json::array();
  for (const auto& info : c.intervals) {
    Json e;
    e["left"] = info.left;
    e["right"] = info.right;
    e["kind"] = to_string(info.kind);
    if (info.witness) {
      e["witness"] = {{"i", info.witness->seq}, {"m", info.witness->m}};
    } else {
      e["witness"] = nullptr;
    }
    e["witness_set"] = to_string(info.witness_set);
    if (info.translate) {
      e["translate"] = *info.translate;
    } else {
      e["translate"] = nullptr;
    }
    intervals.push_back(std::move(e));
  }
  out["intervals"] = std::move(intervals);
  return out;
}

Json nearest_report_to_json(const NearestIntReport& report, const AlphaOracle& alpha, int digits) {
  Json out;
  out["M"] = report.M;
  out["distinct_count"] = report.distinct.size();
  out["distinct_count_with_wrap"] = report.distinct_with_wrap;
  out["bound"] = 6;
  out["distinct_gaps"] = values_to_json(report.distinct, alpha, digits);
  out["wrap_gap"] = value_to_json(report.wrap_gap, alpha, digits);
  out["gaps"] = values_to_json(report.gaps, alpha, digits);
  Json values = Json::array();
  for (const auto& v : report.values) {
    Json e = value_to_json(v.value, alpha, digits);
    e["m"] = v.m;
    values.push_back(std::move(e));
  }
  out["values"] = std::move(values);
  return out;
}

Json four_gap_search_to_json(const FourGapSearch& search, const AlphaOracle& alpha, int digits) {
  auto matches = [&](const std::vector<FourGapMatch>& ms) {
    Json arr = Json::array();
    for (const auto& m : ms) {
      Json e;
      e["M"] = m.M;
      e["convention"] = m.convention;
      e["rounded"] = m.rounded;
      e["gaps"] = values_to_json(m.gaps, alpha, digits);
      arr.push_back(std::move(e));
    }
    return arr;
  };
  Json out;
  out["alpha"] = alpha_oracle_to_json(alpha);
  out["Mmax"] = search.Mmax;
  out["targets"] = search.targets;
  out["max_distinct_interval"] = search.max_distinct_interval;
  out["max_distinct_wrap"] = search.max_distinct_wrap;
  out["interval_matches"] = matches(search.interval_matches);
  out["wrap_matches"] = matches(search.wrap_matches);
  out["found"] = !search.interval_matches.empty() || !search.wrap_matches.empty();
  return out;
}

Json pwl_report_to_json(const PwlReport& report, const AlphaOracle& alpha, int digits) {
  Json out = gap_report_to_json(report.report, alpha, digits);
  out["k_f"] = report.k_f;
  out["active_bound"] = report.active_bound;
  Json parts = Json::array();
  for (std::size_t i = 0; i < report.decomposition.sequences.size(); ++i) {
    const auto& s = report.decomposition.sequences[i];
    parts.push_back({{"piece", report.decomposition.piece_of[i]}, {"p", s.p}, {"n", s.n}, {"N", s.N}});
  }
  out["parts"] = std::move(parts);
  return out;
}

Json oracle_result_to_json(const OracleResult& result) {
  Json out;
  out["digits"] = result.digits;
  out["gaps_decimal"] = result.gaps_decimal;
  out["warnings"] = result.warnings;
  return out;
}

Json oracle_comparison_to_json(const OracleComparison& c) {
  Json out;
  out["gaps_agree"] = c.gaps_agree;
  out["distinct_agree"] = c.distinct_agree;
  out["exact_count"] = c.exact_count;
  out["oracle_count"] = c.oracle_count;
  out["exact_distinct"] = c.exact_distinct;
  out["oracle_distinct"] = c.oracle_distinct;
  out["max_abs_difference"] = c.max_abs_difference;
  return out;
}

}  // namespace threegap
