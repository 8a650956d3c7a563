// Command-line explorer for gap statistics of linear sequences mod P.

#include "threegap/explorer.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

using namespace threegap;

namespace {

void emit_json(const Json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << '\n';
}

template <typename Writer>
void emit_file(const std::string& path, const Writer& write) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  write(out);
}

int run_sweep_command(const std::string& config_path, std::string out_csv, std::string out_json,
                      std::string out_plot, unsigned workers, int digits) {
  SweepSpec spec = sweep_spec_from_json(read_json_file(config_path));
  if (out_csv.empty() && spec.csv_path) out_csv = *spec.csv_path;
  if (out_json.empty() && spec.json_path) out_json = *spec.json_path;
  if (out_plot.empty() && spec.plotdata_path) out_plot = *spec.plotdata_path;

  const auto rows = run_sweep(spec, workers, digits);
  if (!out_csv.empty()) emit_file(out_csv, [&](std::ostream& o) { write_sweep_csv(rows, o); });
  if (!out_plot.empty()) emit_file(out_plot, [&](std::ostream& o) { write_sweep_plotdata(rows, o); });
  if (!out_json.empty()) emit_json(sweep_rows_to_json(rows), out_json);
  if (out_csv.empty() && out_json.empty() && out_plot.empty()) write_sweep_csv(rows, std::cout);

  bool violation = false;
  for (const auto& r : rows) {
    if (!r.error.empty()) std::cerr << "param " << r.param << ": " << r.error << '\n';
    violation = violation || r.invariant_violation;
  }
  return violation ? kExitInvariantViolation : kExitOk;
}

int run_oracle_check(const std::string& config_path, std::uint64_t seed, int count, unsigned digits,
                     const std::string& out_json) {
  std::vector<GapConfig> configs;
  if (!config_path.empty()) {
    const RunInput input = run_input_from_json(read_json_file(config_path));
    const auto* config = std::get_if<GapConfig>(&input);
    if (!config) throw InputError("oracle-check needs a gap configuration or the classical/nearest_int_circle preset");
    configs.push_back(*config);
  } else {
    std::mt19937_64 rng(seed);
    RandomConfigLimits limits;
    limits.max_N = 150;
    limits.max_total = 300;
    for (int i = 0; i < count; ++i) configs.push_back(random_config(rng, limits));
  }

  const unsigned agree = digits * 2 / 3;
  Json results = Json::array();
  bool all_ok = true;
  for (const auto& config : configs) {
    const GapReport report = verify_bound(config);
    const OracleResult oracle = float_oracle_gaps(config, digits);
    const OracleComparison cmp = compare_with_oracle(report, config.alpha, oracle, agree);
    all_ok = all_ok && cmp.ok();
    Json entry;
    entry["config"] = gap_config_to_json(config);
    entry["comparison"] = oracle_comparison_to_json(cmp);
    entry["warnings"] = oracle.warnings;
    results.push_back(std::move(entry));
  }
  Json out;
  out["digits"] = digits;
  out["agree_digits"] = agree;
  out["all_agree"] = all_ok;
  out["runs"] = std::move(results);
  emit_json(out, out_json);
  if (!all_ok) std::cerr << "exact and floating-point gap sets disagree\n";
  return all_ok ? kExitOk : kExitInvariantViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"threegap: exact gap statistics for linear sequences modulo P"};
  app.require_subcommand(1);

  int digits = 30;
  std::string out_json;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--digits", digits, "Significant digits in decimal renderings")->check(CLI::Range(1, 100000));
    cmd->add_option("--out-json", out_json, "Write JSON here instead of stdout");
  };

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one configuration or preset from a JSON file");
  run->add_option("--config", config_path, "JSON input")->required();
  add_common(run);

  std::string out_csv, out_plot;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep = app.add_subcommand("sweep", "Sweep M or alpha and tabulate the gap counts");
  sweep->add_option("--config", config_path, "Sweep specification")->required();
  sweep->add_option("--out-csv", out_csv, "CSV table");
  sweep->add_option("--out-plotdata", out_plot, "Two-column 'param distinct_gaps' data");
  sweep->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  add_common(sweep);

  std::string alpha_text = "golden";
  std::int64_t n_value = 0;
  auto* classical = app.add_subcommand("classical", "Gaps of {m alpha}, 0 < m <= N");
  classical->add_option("--alpha", alpha_text, "golden | sqrt:D | quadratic:a:b:D | nthroot:r:n | decimal:digits:bits");
  classical->add_option("--n", n_value, "N")->required()->check(CLI::PositiveNumber);
  add_common(classical);

  std::int64_t m_value = 0;
  std::string convention = "interval";
  auto* nearest = app.add_subcommand("nearest", "Gaps of ||m alpha||, 0 < m <= M");
  nearest->add_option("--alpha", alpha_text, "Alpha specification");
  nearest->add_option("--m", m_value, "M")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  nearest->add_option("--convention", convention, "interval | wrap")->check(CLI::IsMember({"interval", "wrap"}));
  add_common(nearest);

  std::string function_path, period = "1";
  auto* pwl = app.add_subcommand("pwl", "Gaps of f(m alpha) mod P for a piecewise-linear f");
  pwl->add_option("--function", function_path, "JSON piecewise-linear function")->required();
  pwl->add_option("--alpha", alpha_text, "Alpha specification");
  pwl->add_option("--m", m_value, "M")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  pwl->add_option("--P", period, "Period, num/den");
  add_common(pwl);

  std::int64_t mmax = 5000;
  std::string search_alpha = "nthroot:15:3";
  auto* four_gap = app.add_subcommand("four-gap-search", "Look for M giving four target gap sizes (default: those of 15^(1/3))");
  four_gap->add_option("--mmax", mmax, "Largest M scanned")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 30));
  four_gap->add_option("--alpha", search_alpha, "Alpha specification");
  add_common(four_gap);

  std::uint64_t seed = 1;
  int count = 10;
  unsigned oracle_digits = 150;
  auto* oracle = app.add_subcommand("oracle-check", "Compare exact gaps with a high-precision floating-point run");
  oracle->add_option("--config", config_path, "JSON configuration (otherwise random ones)");
  oracle->add_option("--seed", seed, "Seed for random configurations");
  oracle->add_option("--count", count, "Number of random configurations")->check(CLI::PositiveNumber);
  oracle->add_option("--digits", oracle_digits, "Oracle precision in decimal digits")->check(CLI::Range(30u, 100000u));
  oracle->add_option("--out-json", out_json, "Write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*run) {
      emit_json(run_input(run_input_from_json(read_json_file(config_path)), digits), out_json);
    } else if (*sweep) {
      return run_sweep_command(config_path, out_csv, out_json, out_plot, workers, digits);
    } else if (*classical) {
      emit_json(run_input(classical_config(parse_alpha_arg(alpha_text), n_value), digits), out_json);
    } else if (*nearest) {
      emit_json(run_input(NearestPreset{parse_alpha_arg(alpha_text), m_value, convention == "wrap"}, digits), out_json);
    } else if (*pwl) {
      PwlPreset preset{pwl_function_from_json(read_json_file(function_path), "function"), parse_alpha_arg(alpha_text),
                       m_value, parse_rational(period)};
      if (sgn(preset.P) <= 0) throw ValidationError("bad_P", "P must be a positive rational");
      emit_json(run_input(preset, digits), out_json);
    } else if (*four_gap) {
      const AlphaOracle alpha = parse_alpha_arg(search_alpha);
      const FourGapSearch result = search_four_gaps(mmax, alpha);
      emit_json(four_gap_search_to_json(result, alpha, digits), out_json);
    } else if (*oracle) {
      return run_oracle_check(config_path, seed, count, oracle_digits, out_json);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitOk;
}
