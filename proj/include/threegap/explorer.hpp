#pragma once

// Front-end plumbing shared by the command-line tool and the Python module:
// run inputs (raw configurations and presets), sweeps with CSV/plot output,
// and randomized configuration generation.

#include "threegap/serialize.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace threegap {

enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitInvariantViolation = 2 };

struct NearestPreset {
  AlphaOracle alpha;
  std::int64_t M = 2;
  bool wrap = false;  // count the 1/2 + min - max gap as well
};

struct PwlPreset {
  PwlFunction function;
  AlphaOracle alpha;
  std::int64_t M = 2;
  Rational P = 1;
};

using RunInput = std::variant<GapConfig, NearestPreset, PwlPreset>;

/// A GapConfig object, or {"preset": "classical" | "nearest_int_circle" | "nearest_int" | "pwl", ...}.
RunInput run_input_from_json(const Json& j);

/// Full report for one input (including the rigid-interval classification
/// for raw configurations). Throws on input errors and invariant violations.
Json run_input(const RunInput& input, int digits);

/// Maps an exception from the library to the CLI exit code.
int exit_code_for(const std::exception& e);

/// "golden", "sqrt:D", "quadratic:a:b:D", "nthroot:r:n", "decimal:digits:bits",
/// or an inline JSON object.
AlphaOracle parse_alpha_arg(const std::string& text);

struct MRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
  std::int64_t step = 1;
};

struct SweepSpec {
  RunInput base;
  std::variant<MRange, std::vector<AlphaOracle>> parameter{};
  std::optional<std::string> csv_path{};
  std::optional<std::string> json_path{};
  std::optional<std::string> plotdata_path{};
};

/// {"base": <run input>, "parameter": {"M_range": {"lo", "hi", "step"}} |
///  {"alpha_pool": [...]}, "outputs": {"csv", "json", "plotdata"}}
SweepSpec sweep_spec_from_json(const Json& j);

struct SweepRow {
  std::string param;
  std::int64_t total_points = 0;
  std::size_t distinct_gaps = 0;
  std::int64_t bound = 0;
  bool bound_satisfied = false;
  std::string max_gap;
  std::string min_gap;
  std::size_t rigid_count = 0;
  std::string error;
  bool invariant_violation = false;
};

/// One row per parameter value, in parameter order, computed on up to
/// `workers` threads. Row failures land in the error column.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers, int digits);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_sweep_plotdata(const std::vector<SweepRow>& rows, std::ostream& out);
Json sweep_rows_to_json(const std::vector<SweepRow>& rows);

/// Irrational alphas in (0, inf) used for randomized runs: quadratic and
/// n-th root kinds only.
const std::vector<AlphaOracle>& default_alpha_pool();

struct RandomConfigLimits {
  int max_sequences = 4;
  std::int64_t max_abs_p = 6;
  std::int64_t max_q = 4;
  std::int64_t max_N = 500;
  std::int64_t max_total = 0;  // 0: no cap on sum of N_i - n_i
};

/// Random valid configuration: P from {1, 1/2, 3, 7/5}, t from {1, 2, 3},
/// either variant, shifts in Q + Q*alpha.
GapConfig random_config(std::mt19937_64& rng, const RandomConfigLimits& limits);

}  // namespace threegap
