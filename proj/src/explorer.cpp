#include "threegap/explorer.hpp"

#include "threegap/decimal.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <sstream>
#include <thread>

namespace threegap {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, sep)) parts.push_back(current);
  return parts;
}

std::int64_t require_int(const Json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigParseError("field '" + where + key + "': missing");
  if (!it->is_number_integer()) throw ConfigParseError("field '" + where + key + "': expected an integer");
  return it->get<std::int64_t>();
}

const Json& require_field(const Json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigParseError("field '" + key + "': missing");
  return *it;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// A raw configuration reports its bound, the gap extremes and the rigid count.
void fill_config_row(SweepRow& row, const GapConfig& config, int digits) {
  row.total_points = config.total_points();
  const GapReport report = verify_bound(config);
  row.distinct_gaps = report.distinct_gaps.size();
  row.bound = report.bound_data.bound;
  row.bound_satisfied = report.bound_satisfied;
  row.min_gap = format_significant(report.distinct_gaps.front(), config.alpha, digits);
  row.max_gap = format_significant(report.distinct_gaps.back(), config.alpha, digits);
  row.rigid_count = classify_intervals(config, report).rigid_count;
}

void fill_row(SweepRow& row, const RunInput& input, int digits) {
  if (const auto* config = std::get_if<GapConfig>(&input)) {
    fill_config_row(row, *config, digits);
  } else if (const auto* nearest = std::get_if<NearestPreset>(&input)) {
    const NearestIntReport report = nearest_int_gaps(nearest->alpha, nearest->M);
    std::vector<AlphaLinear> distinct = report.distinct;
    if (nearest->wrap && std::find(distinct.begin(), distinct.end(), report.wrap_gap) == distinct.end()) {
      distinct.push_back(report.wrap_gap);
      std::sort(distinct.begin(), distinct.end(), ValueLess(nearest->alpha));
    }
    row.total_points = report.M;
    row.distinct_gaps = distinct.size();
    row.bound = 6;
    row.bound_satisfied = distinct.size() <= 6;
    row.min_gap = format_significant(distinct.front(), nearest->alpha, digits);
    row.max_gap = format_significant(distinct.back(), nearest->alpha, digits);
    row.rigid_count = classify_intervals(nearest_int_config(nearest->alpha, nearest->M)).rigid_count;
  } else {
    const auto& pwl = std::get<PwlPreset>(input);
    const PwlReport report = pwl_gaps(pwl.function, pwl.alpha, pwl.M, pwl.P);
    row.total_points = pwl.M;
    row.distinct_gaps = report.report.distinct_gaps.size();
    row.bound = report.active_bound;
    row.bound_satisfied = report.report.bound_satisfied;
    row.min_gap = format_significant(report.report.distinct_gaps.front(), pwl.alpha, digits);
    row.max_gap = format_significant(report.report.distinct_gaps.back(), pwl.alpha, digits);
    row.rigid_count = classify_intervals(pwl_config(pwl.function, pwl.alpha, pwl.M, pwl.P), report.report).rigid_count;
  }
}

RunInput with_M(const RunInput& base, std::int64_t M) {
  RunInput out = base;
  std::visit(
      [M](auto& in) {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, GapConfig>) {
          for (auto& s : in.sequences) s.N = M;
        } else {
          in.M = M;
        }
      },
      out);
  return out;
}

RunInput with_alpha(const RunInput& base, const AlphaOracle& alpha) {
  RunInput out = base;
  std::visit([&alpha](auto& in) { in.alpha = alpha; }, out);
  return out;
}

}  // namespace

RunInput run_input_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigParseError("field '<root>': expected an object");
  if (!j.contains("preset")) return gap_config_from_json(j);
  if (!j["preset"].is_string()) throw ConfigParseError("field 'preset': expected a string");
  const std::string preset = j["preset"].get<std::string>();
  if (preset == "classical") {
    const std::int64_t N = require_int(j, "N", "");
    if (N < 1) throw ValidationError("bad_range", "N must be positive");
    GapConfig config = classical_config(alpha_oracle_from_json(require_field(j, "alpha"), "alpha"), N);
    config.validate();
    return config;
  }
  if (preset == "nearest_int_circle") {
    const std::int64_t M = require_int(j, "M", "");
    if (M < 2) throw ValidationError("bad_range", "M must be > 1");
    GapConfig config = nearest_int_config(alpha_oracle_from_json(require_field(j, "alpha"), "alpha"), M);
    config.validate();
    return config;
  }
  if (preset == "nearest_int") {
    NearestPreset out{alpha_oracle_from_json(require_field(j, "alpha"), "alpha")};
    out.M = require_int(j, "M", "");
    if (out.M < 2) throw ValidationError("bad_range", "M must be > 1");
    if (j.contains("convention")) {
      const std::string conv = j["convention"].is_string() ? j["convention"].get<std::string>() : "";
      if (conv != "interval" && conv != "wrap") {
        throw ConfigParseError("field 'convention': expected \"interval\" or \"wrap\"");
      }
      out.wrap = conv == "wrap";
    }
    return out;
  }
  if (preset == "pwl") {
    PwlPreset out{pwl_function_from_json(require_field(j, "function"), "function"),
                  alpha_oracle_from_json(require_field(j, "alpha"), "alpha")};
    out.M = require_int(j, "M", "");
    if (out.M < 2) throw ValidationError("bad_range", "M must be > 1");
    if (j.contains("P")) out.P = rational_from_json(j["P"], "P");
    if (sgn(out.P) <= 0) throw ValidationError("bad_P", "P must be a positive rational");
    return out;
  }
  throw ConfigParseError("field 'preset': unknown preset \"" + preset +
                         "\" (expected classical, nearest_int_circle, nearest_int or pwl)");
}

Json run_input(const RunInput& input, int digits) {
  if (const auto* config = std::get_if<GapConfig>(&input)) {
    const GapReport report = verify_bound(*config);
    Json out;
    out["kind"] = "config";
    out["config"] = gap_config_to_json(*config);
    out["translation_check"] = translation_check(*config);
    out["report"] = gap_report_to_json(report, config->alpha, digits);
    out["classification"] = classification_to_json(classify_intervals(*config, report), config->alpha, digits);
    return out;
  }
  if (const auto* nearest = std::get_if<NearestPreset>(&input)) {
    Json out;
    out["kind"] = "nearest_int";
    out["alpha"] = alpha_oracle_to_json(nearest->alpha);
    out["convention"] = nearest->wrap ? "wrap" : "interval";
    out["report"] = nearest_report_to_json(nearest_int_gaps(nearest->alpha, nearest->M), nearest->alpha, digits);
    return out;
  }
  const auto& pwl = std::get<PwlPreset>(input);
  const PwlReport report = pwl_gaps(pwl.function, pwl.alpha, pwl.M, pwl.P);
  const GapConfig config = pwl_config(pwl.function, pwl.alpha, pwl.M, pwl.P);
  Json out;
  out["kind"] = "pwl";
  out["alpha"] = alpha_oracle_to_json(pwl.alpha);
  out["function"] = pwl_function_to_json(pwl.function);
  out["report"] = pwl_report_to_json(report, pwl.alpha, digits);
  out["classification"] = classification_to_json(classify_intervals(config, report.report), pwl.alpha, digits);
  return out;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InvariantViolation*>(&e)) return kExitInvariantViolation;
  return kExitInputError;
}

AlphaOracle parse_alpha_arg(const std::string& text) {
  if (!text.empty() && text.front() == '{') return alpha_oracle_from_json(parse_json_text(text, "--alpha"), "alpha");
  const auto parts = split(text, ':');
  if (parts.empty()) throw InputError("empty alpha");
  const std::string& kind = parts[0];
  auto arity = [&](std::size_t n) {
    if (parts.size() != n + 1) throw InputError("alpha \"" + text + "\": " + kind + " takes " + std::to_string(n) + " fields");
  };
  if (kind == "golden") {
    arity(0);
    return AlphaOracle::golden_ratio();
  }
  if (kind == "sqrt") {
    arity(1);
    return AlphaOracle::quadratic(0, 1, parse_rational(parts[1]).get_num());
  }
  if (kind == "quadratic") {
    arity(3);
    const Rational D = parse_rational(parts[3]);
    if (D.get_den() != 1) throw InputError("quadratic discriminant must be an integer");
    return AlphaOracle::quadratic(parse_rational(parts[1]), parse_rational(parts[2]), D.get_num());
  }
  if (kind == "nthroot") {
    arity(2);
    const std::int64_t n = to_int64(parse_rational(parts[2]).get_num());
    if (n < 2) throw InputError("nthroot degree must be >= 2");
    return AlphaOracle::nth_root(parse_rational(parts[1]), static_cast<unsigned>(n));
  }
  if (kind == "decimal") {
    arity(2);
    const std::int64_t bits = to_int64(parse_rational(parts[2]).get_num());
    if (bits < 1) throw InputError("decimal precision must be positive");
    return AlphaOracle::decimal(parts[1], static_cast<unsigned>(bits));
  }
  throw InputError("unknown alpha \"" + text + "\" (golden, sqrt:D, quadratic:a:b:D, nthroot:r:n, decimal:digits:bits)");
}

SweepSpec sweep_spec_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigParseError("field '<root>': expected an object");
  SweepSpec spec{run_input_from_json(require_field(j, "base"))};
  const Json& param = require_field(j, "parameter");
  if (param.contains("M_range")) {
    const Json& r = param["M_range"];
    MRange range;
    range.lo = require_int(r, "lo", "parameter.M_range.");
    range.hi = require_int(r, "hi", "parameter.M_range.");
    range.step = r.contains("step") ? require_int(r, "step", "parameter.M_range.") : 1;
    if (range.lo < 1) throw ValidationError("bad_range", "M_range.lo must be >= 1");
    if (range.step < 1) throw ValidationError("bad_range", "M_range.step must be >= 1");
    if (range.hi < range.lo) throw ValidationError("bad_range", "M_range.hi must be >= lo (empty range)");
    spec.parameter = range;
  } else if (param.contains("alpha_pool")) {
    const Json& pool = param["alpha_pool"];
    if (!pool.is_array() || pool.empty()) throw ConfigParseError("field 'parameter.alpha_pool': expected a non-empty array");
    std::vector<AlphaOracle> alphas;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      alphas.push_back(alpha_oracle_from_json(pool[i], "parameter.alpha_pool[" + std::to_string(i) + "]"));
    }
    spec.parameter = std::move(alphas);
  } else {
    throw ConfigParseError("field 'parameter': expected M_range or alpha_pool");
  }
  if (j.contains("outputs")) {
    const Json& o = j["outputs"];
    if (o.contains("csv")) spec.csv_path = o["csv"].get<std::string>();
    if (o.contains("json")) spec.json_path = o["json"].get<std::string>();
    if (o.contains("plotdata")) spec.plotdata_path = o["plotdata"].get<std::string>();
  }
  return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers, int digits) {
  std::vector<std::pair<std::string, RunInput>> jobs;
  if (const auto* range = std::get_if<MRange>(&spec.parameter)) {
    for (std::int64_t M = range->lo; M <= range->hi; M += range->step) {
      jobs.emplace_back(std::to_string(M), with_M(spec.base, M));
    }
  } else {
    for (const auto& alpha : std::get<std::vector<AlphaOracle>>(spec.parameter)) {
      jobs.emplace_back(alpha.describe(), with_alpha(spec.base, alpha));
    }
  }

  std::vector<SweepRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      SweepRow& row = rows[i];
      row.param = jobs[i].first;
      try {
        fill_row(row, jobs[i].second, digits);
      } catch (const std::exception& e) {
        row.error = e.what();
        row.bound_satisfied = false;
        row.invariant_violation = exit_code_for(e) == kExitInvariantViolation;
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "param,N_total,distinct_gaps,bound_3c,bound_satisfied,max_gap_decimal,min_gap_decimal,rigid_count,error\n";
  for (const auto& r : rows) {
    out << csv_escape(r.param) << ',' << r.total_points << ',' << r.distinct_gaps << ',' << r.bound << ','
        << (r.bound_satisfied ? "true" : "false") << ',' << r.max_gap << ',' << r.min_gap << ',' << r.rigid_count << ','
        << csv_escape(r.error) << '\n';
  }
}

void write_sweep_plotdata(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "# param distinct_gaps\n";
  for (const auto& r : rows) {
    if (r.error.empty()) out << r.param << ' ' << r.distinct_gaps << '\n';
  }
}

Json sweep_rows_to_json(const std::vector<SweepRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json e;
    e["param"] = r.param;
    e["N_total"] = r.total_points;
    e["distinct_gaps"] = r.distinct_gaps;
    e["bound_3c"] = r.bound;
    e["bound_satisfied"] = r.bound_satisfied;
    e["max_gap_decimal"] = r.max_gap;
    e["min_gap_decimal"] = r.min_gap;
    e["rigid_count"] = r.rigid_count;
    e["error"] = r.error;
    out.push_back(std::move(e));
  }
  return out;
}

const std::vector<AlphaOracle>& default_alpha_pool() {
  static const std::vector<AlphaOracle> pool{
      AlphaOracle::golden_ratio(),
      AlphaOracle::sqrt_of(2),
      AlphaOracle::sqrt_of(3),
      AlphaOracle::quadratic(-1, 1, 5),
      AlphaOracle::sqrt_of(7),
      AlphaOracle::quadratic(Rational(3, 4), Rational(1, 4), 17),
      AlphaOracle::quadratic(0, Rational(1, 3), 11),
      AlphaOracle::quadratic(0, Rational(1, 2), 2),
      AlphaOracle::quadratic(Rational(-1, 3), Rational(1, 3), 13),
      AlphaOracle::nth_root(2, 3),
      AlphaOracle::cube_root_of_15(),
      AlphaOracle::nth_root(2, 5),
      AlphaOracle::nth_root(3, 4),
      AlphaOracle::nth_root(Rational(5, 7), 2),
  };
  return pool;
}

GapConfig random_config(std::mt19937_64& rng, const RandomConfigLimits& limits) {
  auto uniform = [&rng](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  auto small_rational = [&] { return make_rational(uniform(-5, 5), uniform(1, 6)); };

  const auto& pool = default_alpha_pool();
  GapConfig config{pool[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(pool.size()) - 1))]};
  static const Rational periods[] = {Rational(1), Rational(1, 2), Rational(3), Rational(7, 5)};
  config.P = periods[uniform(0, 3)];
  config.q = uniform(1, limits.max_q);
  config.lambda_multiplier = uniform(1, 3);
  config.variant = uniform(0, 1) ? FracVariant::Prime : FracVariant::DoublePrime;

  const auto d = static_cast<int>(uniform(1, limits.max_sequences));
  for (int i = 0; i < d; ++i) {
    SequenceSpec s;
    do {
      s.p = uniform(-limits.max_abs_p, limits.max_abs_p);
    } while (s.p == 0);
    s.N = uniform(1, limits.max_N);
    s.n = uniform(0, 1) ? 0 : uniform(0, s.N);
    s.k = AlphaLinear{small_rational(), uniform(0, 1) ? Rational(0) : small_rational()};
    config.sequences.push_back(std::move(s));
  }
  if (config.total_points() == 0) config.sequences.front().n = config.sequences.front().N - 1;
  if (limits.max_total > 0) {
    while (config.total_points() > limits.max_total) {
      for (auto& s : config.sequences) {
        s.N = std::max<std::int64_t>(1, s.N / 2);
        s.n = std::min(s.n / 2, s.N - 1);
      }
    }
  }
  return config;
}

}  // namespace threegap
