// Python bindings. Values cross the boundary as JSON text; the package
// wrapper in threegap/__init__.py turns them into dicts.

#include "threegap/explorer.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace threegap;

namespace {

std::string run_json(const std::string& input, int digits) {
  return run_input(run_input_from_json(parse_json_text(input, "input")), digits).dump();
}

std::string classical_json(const std::string& alpha, std::int64_t N, int digits) {
  return run_input(classical_config(parse_alpha_arg(alpha), N), digits).dump();
}

std::string nearest_json(const std::string& alpha, std::int64_t M, const std::string& convention, int digits) {
  if (convention != "interval" && convention != "wrap") throw InputError("convention must be 'interval' or 'wrap'");
  return run_input(NearestPreset{parse_alpha_arg(alpha), M, convention == "wrap"}, digits).dump();
}

std::string four_gap_search_json(std::int64_t mmax, const std::string& alpha_text, int digits) {
  const AlphaOracle alpha = parse_alpha_arg(alpha_text);
  return four_gap_search_to_json(search_four_gaps(mmax, alpha), alpha, digits).dump();
}

std::string sweep_json(const std::string& spec, unsigned workers, int digits) {
  return sweep_rows_to_json(run_sweep(sweep_spec_from_json(parse_json_text(spec, "spec")), workers, digits)).dump();
}

std::string oracle_check_json(const std::string& config_text, unsigned digits, unsigned agree_digits) {
  const GapConfig config = gap_config_from_json(parse_json_text(config_text, "config"));
  const OracleResult oracle = float_oracle_gaps(config, digits);
  Json out;
  out["oracle"] = oracle_result_to_json(oracle);
  out["comparison"] = oracle_comparison_to_json(compare_with_oracle(verify_bound(config), config.alpha, oracle, agree_digits));
  return out.dump();
}

std::string bound_json(const std::string& config_text) {
  return bound_data_to_json(bound_3c(gap_config_from_json(parse_json_text(config_text, "config")))).dump();
}

std::string random_config_json(std::uint64_t seed, std::int64_t max_N) {
  std::mt19937_64 rng(seed);
  RandomConfigLimits limits;
  limits.max_N = max_N;
  return gap_config_to_json(random_config(rng, limits)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact gap statistics for linear sequences modulo P";

  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<InvariantViolation> invariant_violation(m, "InvariantViolation", PyExc_RuntimeError);
  static py::exception<PrecisionExhausted> precision_exhausted(m, "PrecisionExhausted", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      py::set_error(input_error, e.what());
    } catch (const InvariantViolation& e) {
      py::set_error(invariant_violation, e.what());
    } catch (const PrecisionExhausted& e) {
      py::set_error(precision_exhausted, e.what());
    }
  });

  const auto release = py::call_guard<py::gil_scoped_release>();  // long computations run without the GIL
  m.def("run", run_json, release, py::arg("input"), py::arg("digits") = 30);
  m.def("classical", classical_json, release, py::arg("alpha"), py::arg("N"), py::arg("digits") = 30);
  m.def("nearest", nearest_json, release, py::arg("alpha"), py::arg("M"), py::arg("convention") = "interval",
        py::arg("digits") = 30);
  m.def("four_gap_search", four_gap_search_json, release, py::arg("mmax") = 5000,
        py::arg("alpha") = "nthroot:15:3", py::arg("digits") = 12);
  m.def("sweep", sweep_json, release, py::arg("spec"), py::arg("workers") = 1, py::arg("digits") = 30);
  m.def("oracle_check", oracle_check_json, release, py::arg("config"), py::arg("digits") = 150,
        py::arg("agree_digits") = 100);
  m.def("bound_3c", bound_json, py::arg("config"));
  m.def("random_config", random_config_json, py::arg("seed"), py::arg("max_N") = 500);
}
