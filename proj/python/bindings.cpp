#include "pampa/config.hpp"
#include "pampa/driver.hpp"
#include "pampa/io.hpp"
#include "pampa/oracle.hpp"
#include "pampa/verify.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace pampa;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> to_array(const std::vector<std::vector<double>>& rows) {
  const py::ssize_t n = static_cast<py::ssize_t>(rows.size());
  const py::ssize_t m = n ? static_cast<py::ssize_t>(rows.front().size()) : 0;
  py::array_t<double> out({n, m});
  auto a = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t j = 0; j < m; ++j) a(i, j) = rows[i][j];
  return out;
}

RunConfig config_from(const std::string& config, const std::optional<std::string>& yaml,
                      std::optional<int> cells, std::optional<double> t_final,
                      std::optional<std::string> oscillation) {
  RunConfig cfg = yaml ? parse_config(*yaml) : resolve_config(config);
  if (cells) cfg.cells = *cells;
  if (t_final) cfg.t_final = *t_final;
  if (oscillation) cfg.scheme.oscillation = parse_oscillation(*oscillation);
  validate(cfg);
  return cfg;
}

py::dict run_py(const std::string& config, std::optional<std::string> yaml,
                std::optional<int> cells, std::optional<double> t_final,
                std::optional<std::string> oscillation, std::optional<std::string> out,
                std::optional<int> snapshots, std::uint64_t seed, bool write_files) {
  const RunConfig cfg = config_from(config, yaml, cells, t_final, oscillation);
  RunOptions opt;
  opt.seed = seed;
  if (out) opt.out_dir = *out;
  opt.snapshots = snapshots;
  opt.write_files = write_files;
  RunSummary s;
  {
    py::gil_scoped_release release;
    s = run(cfg, opt);
  }
  py::dict d;
  d["name"] = s.name;
  d["system"] = to_string(s.system);
  d["cells"] = s.cells;
  d["steps"] = s.steps;
  d["time"] = s.time;
  d["completed"] = s.completed;
  d["abort_reason"] = s.abort_reason;
  d["violations"] = s.sweep.total;
  d["checked"] = s.sweep.checked;
  d["worst_margin"] = s.sweep.worst_margin;
  d["conservation_drift"] = s.conservation_drift;
  d["min_first"] = s.min_first;
  d["second"] = s.second;
  d["x"] = to_array(s.centers);
  d["nodes"] = to_array(s.nodes);
  d["averages"] = to_array(s.averages);
  d["node_values"] = to_array(s.node_values);
  d["conservative_names"] = conservative_names(s.system);
  d["primitive_names"] = primitive_names(s.system);
  std::vector<std::string> files;
  for (const auto& f : s.files) files.push_back(f.string());
  d["files"] = files;
  d["seconds"] = s.seconds;
  return d;
}

py::list convergence_py(const std::string& config, const std::vector<int>& cells,
                        std::optional<std::string> oscillation, std::optional<std::string> out) {
  const RunConfig cfg = config_from(config, std::nullopt, std::nullopt, std::nullopt, oscillation);
  RunOptions opt;
  opt.write_files = false;
  std::vector<ConvergenceRow> rows;
  {
    py::gil_scoped_release release;
    rows = convergence(cfg, cells, opt);
  }
  if (out) write_convergence_csv(*out, rows);
  py::list result;
  for (const auto& r : rows) {
    py::dict d;
    d["N"] = r.cells;
    d["cell_error"] = r.cell_error;
    d["cell_order"] = r.cell_order;
    d["point_error"] = r.point_error;
    d["point_order"] = r.point_order;
    d["violations"] = r.violations;
    d["seconds"] = r.seconds;
    result.append(d);
  }
  return result;
}

}  // namespace

PYBIND11_MODULE(_pampa, m) {
  m.doc() = "IDP PAMPA solver for 1D hyperbolic conservation laws";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  m.def("list_presets", &list_presets);
  m.def("preset_directory", [] { return preset_directory().string(); });
  m.def(
      "config_yaml", [](const std::string& config) { return to_yaml(resolve_config(config)); },
      py::arg("config"), "The resolved config of a preset or YAML file, as YAML text.");

  m.def("run", &run_py, py::arg("config") = "", py::kw_only(), py::arg("yaml") = py::none(),
        py::arg("cells") = py::none(), py::arg("t_final") = py::none(),
        py::arg("oscillation") = py::none(), py::arg("out") = py::none(),
        py::arg("snapshots") = py::none(), py::arg("seed") = 0, py::arg("write_files") = false,
        "Run a preset, a YAML file, or inline YAML text (`yaml=`) to its final time.");

  m.def("convergence", &convergence_py, py::arg("config"), py::arg("cells"), py::kw_only(),
        py::arg("oscillation") = py::none(), py::arg("out") = py::none(),
        "Error table against the exact translated solution.");

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, long long samples) {
        VerifyOptions opt;
        opt.seed = seed;
        opt.samples = samples;
        std::vector<SuiteResult> res;
        {
          py::gil_scoped_release release;
          res = verify(suite, opt);
        }
        py::list out;
        for (const auto& r : res) {
          py::dict d;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["detail"] = r.detail;
          d["seconds"] = r.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("suite"), py::kw_only(), py::arg("seed") = 42, py::arg("samples") = 100000);

  m.def(
      "thm43",
      [](double eps, double courant) {
        const Thm43Record r = thm43_counterexample(eps, courant);
        py::dict d;
        d["eps"] = r.eps;
        d["courant"] = r.courant;
        d["average"] = r.average;
        d["midpoint"] = r.midpoint;
        d["theta"] = r.theta;
        d["continuous_average"] = r.continuous_average;
        d["idp_average"] = r.idp_average;
        d["formula_value"] = r.formula_value;
        return d;
      },
      py::arg("eps") = 0.1, py::arg("courant") = 1.0 / 6.0,
      "One step of the continuous and the IDP flux on the single-cell counterexample.");

  m.def(
      "lf_splitting",
      [](const std::string& system, long long samples, std::uint64_t seed, double lambda_scale) {
        const SplittingResult r =
            sample_lf_splitting(parse_splitting_system(system), samples, seed, lambda_scale);
        py::dict d;
        d["samples"] = r.samples;
        d["failures"] = r.failures;
        d["worst_margin"] = r.worst_margin;
        d["passed"] = r.passed();
        return d;
      },
      py::arg("system"), py::arg("samples") = 100000, py::arg("seed") = 42,
      py::arg("lambda_scale") = 1.0);

  m.def("format_number", &format_number, "17 significant digits, locale independent.");
}
