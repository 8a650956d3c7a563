#include "threegap/errors.hpp"
#include "threegap/explorer.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace threegap {
namespace {

namespace fs = std::filesystem;

TEST(Serialize, ConfigRoundTrip) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const GapConfig config = random_config(rng, {});
    const Json j = gap_config_to_json(config);
    const GapConfig back = gap_config_from_json(parse_json_text(j.dump(), "test"));
    EXPECT_EQ(gap_config_to_json(back), j);
    EXPECT_EQ(back.alpha, config.alpha);
  }
}

TEST(Serialize, AlphaKindsRoundTrip) {
  for (const auto& alpha : {AlphaOracle::golden_ratio(), AlphaOracle::nth_root(make_rational(5, 7), 2),
                            AlphaOracle::decimal("2.4662120743304701014", 60)}) {
    EXPECT_EQ(alpha_oracle_from_json(alpha_oracle_to_json(alpha), "alpha"), alpha);
  }
}

TEST(Serialize, DefaultsAndInfiniteLambda) {
  const GapConfig config = gap_config_from_json(Json::parse(R"({
    "alpha": {"kind": "quadratic", "a": "1/2", "b": "1/2", "D": "5"},
    "sequences": [{"p": 1, "k": {"u": "0", "v": "0"}, "n": 0, "N": 5}]})"));
  EXPECT_EQ(config.q, 1);
  EXPECT_EQ(config.P, 1);
  EXPECT_EQ(config.lambda_multiplier, std::optional<std::int64_t>(1));
  EXPECT_EQ(config.variant, FracVariant::DoublePrime);

  const GapConfig inf = gap_config_from_json(Json::parse(R"({
    "alpha": {"kind": "nthroot", "r": "15", "n": 3}, "lambda_multiplier": "inf", "variant": "prime",
    "sequences": [{"p": -2, "k": {"u": "1/3", "v": "0"}, "n": 0, "N": 5}]})"));
  EXPECT_FALSE(inf.lambda_multiplier.has_value());
}

TEST(Serialize, ErrorsNameTheField) {
  try {
    gap_config_from_json(Json::parse(R"({"alpha": {"kind": "quadratic", "a": "x", "b": 1, "D": 5},
      "sequences": [{"p": 1, "k": {"u": 0, "v": 0}, "n": 0, "N": 5}]})"));
    FAIL() << "expected ConfigParseError";
  } catch (const ConfigParseError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha.a"), std::string::npos) << e.what();
  }
  try {
    parse_json_text("{\n  \"a\": [1,\n}", "broken.json");
    FAIL() << "expected ConfigParseError";
  } catch (const ConfigParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Serialize, ReportCarriesExactAndDecimalValues) {
  const GapReport report = classical_three_gap(AlphaOracle::golden_ratio(), 5);
  const Json j = gap_report_to_json(report, AlphaOracle::golden_ratio(), 8);
  EXPECT_EQ(j["distinct_count"], 2);
  EXPECT_EQ(j["bound"]["bound"], 3);
  EXPECT_EQ(j["distinct_gaps"][0]["u"], "5/1");
  EXPECT_EQ(j["distinct_gaps"][0]["v"], "-3/1");
  EXPECT_EQ(j["distinct_gaps"][0]["decimal"], "0.14589803");
}

TEST(Explorer, PresetsDecode) {
  const RunInput classical = run_input_from_json(Json::parse(R"({"preset": "classical", "alpha":
    {"kind": "quadratic", "a": "0", "b": "1", "D": "2"}, "N": 10})"));
  ASSERT_TRUE(std::holds_alternative<GapConfig>(classical));
  EXPECT_EQ(std::get<GapConfig>(classical).total_points(), 10);

  const RunInput nearest = run_input_from_json(Json::parse(R"({"preset": "nearest_int", "alpha":
    {"kind": "nthroot", "r": "15", "n": 3}, "M": 75, "convention": "wrap"})"));
  ASSERT_TRUE(std::holds_alternative<NearestPreset>(nearest));
  EXPECT_TRUE(std::get<NearestPreset>(nearest).wrap);

  EXPECT_THROW(run_input_from_json(Json::parse(R"({"preset": "nope"})")), ConfigParseError);
  EXPECT_THROW(run_input_from_json(Json::parse(R"({"preset": "nearest_int_circle", "alpha":
    {"kind": "nthroot", "r": "2", "n": 2}, "M": 1})")), ValidationError);
}

TEST(Explorer, AlphaArguments) {
  EXPECT_EQ(parse_alpha_arg("golden"), AlphaOracle::golden_ratio());
  EXPECT_EQ(parse_alpha_arg("sqrt:2"), AlphaOracle::sqrt_of(2));
  EXPECT_EQ(parse_alpha_arg("quadratic:1/2:1/2:5"), AlphaOracle::golden_ratio());
  EXPECT_EQ(parse_alpha_arg("nthroot:15:3"), AlphaOracle::cube_root_of_15());
  EXPECT_EQ(parse_alpha_arg(R"({"kind": "nthroot", "r": "2", "n": 3})"), AlphaOracle::nth_root(2, 3));
  EXPECT_THROW(parse_alpha_arg("pi"), InputError);
  EXPECT_THROW(parse_alpha_arg("sqrt:9"), InputError);
  EXPECT_THROW(parse_alpha_arg("nthroot:2"), InputError);
}

TEST(Explorer, ExitCodes) {
  EXPECT_EQ(exit_code_for(ValidationError("zero_slope", "zero slope")), kExitInputError);
  EXPECT_EQ(exit_code_for(ConfigParseError("x")), kExitInputError);
  EXPECT_EQ(exit_code_for(InvariantViolation("x")), kExitInvariantViolation);
  EXPECT_EQ(exit_code_for(BoundViolation("x", GapReport{})), kExitInvariantViolation);
}

TEST(Sweep, ClassicalRangeStaysWithinThree) {
  SweepSpec spec{classical_config(AlphaOracle::sqrt_of(2), 1)};
  spec.parameter = MRange{1, 500, 1};
  const auto rows = run_sweep(spec, 2, 10);
  ASSERT_EQ(rows.size(), 500u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].param, std::to_string(i + 1));
    EXPECT_TRUE(rows[i].error.empty());
    EXPECT_LE(rows[i].distinct_gaps, 3u);
    EXPECT_TRUE(rows[i].bound_satisfied);
  }
}

TEST(Sweep, NearestWrapFlagsFourGaps) {
  SweepSpec spec{NearestPreset{AlphaOracle::cube_root_of_15(), 2, true}};
  spec.parameter = MRange{70, 80, 1};
  const auto rows = run_sweep(spec, 1, 10);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows[5].param, "75");
  EXPECT_EQ(rows[5].distinct_gaps, 4u);
}

TEST(Sweep, CsvAndPlotData) {
  SweepSpec spec{classical_config(AlphaOracle::golden_ratio(), 1)};
  spec.parameter = std::vector<AlphaOracle>{AlphaOracle::golden_ratio(), AlphaOracle::sqrt_of(2)};
  const auto rows = run_sweep(spec, 1, 6);
  std::ostringstream csv, plot;
  write_sweep_csv(rows, csv);
  write_sweep_plotdata(rows, plot);
  std::istringstream lines(csv.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header, "param,N_total,distinct_gaps,bound_3c,bound_satisfied,max_gap_decimal,min_gap_decimal,rigid_count,error");
  EXPECT_EQ(first, "\"quadratic(1/2,1/2,5)\",1,1,3,true,1.00000,1.00000,1,");
  EXPECT_EQ(csv.str().find('\r'), std::string::npos);
  EXPECT_NE(plot.str().find("quadratic(1/2,1/2,5) 1\n"), std::string::npos);
}

TEST(Sweep, SpecValidation) {
  EXPECT_THROW(sweep_spec_from_json(Json::parse(R"({"base": {"preset": "classical", "alpha":
    {"kind": "quadratic", "a": "0", "b": "1", "D": "2"}, "N": 3},
    "parameter": {"M_range": {"lo": 10, "hi": 5}}})")), ValidationError);
  EXPECT_THROW(sweep_spec_from_json(Json::parse(R"({"base": {"preset": "classical", "alpha":
    {"kind": "quadratic", "a": "0", "b": "1", "D": "2"}, "N": 3}, "parameter": {}})")), ConfigParseError);
}

TEST(FloatOracle, AgreesOnClassicalGolden) {
  const GapConfig config = classical_config(AlphaOracle::golden_ratio(), 5);
  const OracleResult oracle = float_oracle_gaps(config, 50);
  const OracleComparison cmp = compare_with_oracle(verify_bound(config), config.alpha, oracle, 40);
  EXPECT_TRUE(cmp.ok());
  EXPECT_EQ(cmp.oracle_distinct, 2u);
  EXPECT_THROW(float_oracle_gaps(config, 10), ValidationError);
}

TEST(FloatOracle, SeesCoincidentPoints) {
  GapConfig config{AlphaOracle::golden_ratio()};
  SequenceSpec a, b;
  a.N = 4;
  b.n = 1;
  b.N = 3;
  config.sequences = {a, b};
  const OracleResult oracle = float_oracle_gaps(config, 40);
  const OracleComparison cmp = compare_with_oracle(verify_bound(config), config.alpha, oracle, 30);
  EXPECT_TRUE(cmp.ok());
  EXPECT_EQ(oracle.gaps_decimal.front(), "0");
}

// The command-line tool, end to end.
class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("threegap_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

  int run(const std::string& args) {
    const std::string cmd = std::string(THREEGAP_CLI) + " " + args + " > " + (dir_ / "stdout").string() + " 2> " +
                            (dir_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  }

  std::string slurp(const std::string& name) {
    std::ifstream in(dir_ / name);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

TEST_F(Cli, NearestIntCirclePresetSucceeds) {
  const auto cfg = write("c.json", R"({"preset": "nearest_int_circle", "alpha":
    {"kind": "quadratic", "a": "1/2", "b": "1/2", "D": "5"}, "M": 50})");
  ASSERT_EQ(run("run --config " + cfg), 0) << slurp("stderr");
  const Json out = Json::parse(slurp("stdout"));
  EXPECT_LE(out["report"]["distinct_count"].get<int>(), 6);
  EXPECT_TRUE(out["report"]["bound_satisfied"].get<bool>());
}

TEST_F(Cli, ZeroSlopeIsAnInputError) {
  const auto cfg = write("z.json", R"({"alpha": {"kind": "quadratic", "a": "0", "b": "1", "D": "2"},
    "sequences": [{"p": 0, "k": {"u": "0", "v": "0"}, "n": 0, "N": 5}]})");
  EXPECT_EQ(run("run --config " + cfg), 1);
  EXPECT_NE(slurp("stderr").find("zero slope"), std::string::npos);
}

TEST_F(Cli, BadLambdaIsAnInputError) {
  const auto cfg = write("l.json", R"({"alpha": {"kind": "quadratic", "a": "0", "b": "1", "D": "2"},
    "lambda_multiplier": 0, "sequences": [{"p": 1, "k": {"u": "0", "v": "0"}, "n": 0, "N": 5}]})");
  EXPECT_EQ(run("run --config " + cfg), 1);
  EXPECT_NE(slurp("stderr").find("λ must be a positive integer multiple of Pq"), std::string::npos);
}

TEST_F(Cli, MalformedFileAndUnknownFlag) {
  EXPECT_EQ(run("run --config " + write("bad.json", "{")), 1);
  EXPECT_EQ(run("run --config " + (dir_ / "missing.json").string()), 1);
  EXPECT_EQ(run("classical --n 0"), 1);
  EXPECT_EQ(run("frobnicate"), 1);
}

TEST_F(Cli, SweepWritesAllOutputs) {
  const auto cfg = write("s.json", R"({"base": {"preset": "classical", "alpha":
    {"kind": "quadratic", "a": "0", "b": "1", "D": "2"}, "N": 1},
    "parameter": {"M_range": {"lo": 1, "hi": 40}}})");
  const std::string csv = (dir_ / "o.csv").string(), plot = (dir_ / "o.dat").string(), js = (dir_ / "o.json").string();
  ASSERT_EQ(run("sweep --config " + cfg + " --out-csv " + csv + " --out-plotdata " + plot + " --out-json " + js), 0);
  EXPECT_EQ(Json::parse(slurp("o.json")).size(), 40u);
  const std::string table = slurp("o.csv");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 41);
}

TEST_F(Cli, FourGapSearchFindsTheTargets) {
  ASSERT_EQ(run("four-gap-search --mmax 150"), 0);
  const Json out = Json::parse(slurp("stdout"));
  EXPECT_TRUE(out["found"].get<bool>());
}

TEST_F(Cli, OracleCheckAgrees) {
  ASSERT_EQ(run("oracle-check --seed 3 --count 5 --digits 60"), 0) << slurp("stderr");
  EXPECT_TRUE(Json::parse(slurp("stdout"))["all_agree"].get<bool>());
}

}  // namespace
}  // namespace threegap
