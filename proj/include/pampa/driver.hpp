#ifndef PAMPA_DRIVER_HPP_
#define PAMPA_DRIVER_HPP_

#include "pampa/config.hpp"
#include "pampa/oracle.hpp"
#include "pampa/systems.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pampa {

/// Calls f with the equation system described by the config.
template <class F>
decltype(auto) with_system(const SystemConfig& s, F&& f) {
  switch (s.kind) {
    case SystemKind::advection:
      return f(ScalarLaw(ScalarFlux::advection, s.lower, s.upper, s.speed));
    case SystemKind::burgers:
      return f(ScalarLaw(ScalarFlux::burgers, s.lower, s.upper));
    case SystemKind::euler:
      return f(Euler(s.gamma, s.rho_ref));
    case SystemKind::mhd:
      return f(Mhd(s.gamma, s.bx, s.rho_ref));
  }
  throw ConfigError("unknown system");
}

/// Column names used in the output files.
std::vector<std::string> conservative_names(SystemKind kind);
std::vector<std::string> primitive_names(SystemKind kind);

struct RunOptions {
  std::uint64_t seed = 0;  // recorded in the metadata; the solver itself draws no random numbers
  std::optional<std::filesystem::path> out_dir;  // overrides the config
  std::optional<int> snapshots;                  // overrides the config
  bool write_files = true;
  bool sweep = true;              // check every stage against G
  bool stop_on_violation = true;  // abort the run at the first step with a violation
  std::function<void(const std::string&)> log;
};

struct StepRecord {
  int step = 0;
  double time = 0.0;
  double dt = 0.0;
  int retries = 0;
  bool multistep = false;
  double min_first = 0.0;  // min rho, or min u for scalars
  double second = 0.0;     // min p, or max u for scalars
  int idp_active = 0;
  int oscillation_active = 0;
  double max_courant = 0.0;
  std::vector<double> totals;  // sum_j dx_j U_bar_j per component
};

struct RunSummary {
  std::string name;
  SystemKind system = SystemKind::advection;
  int cells = 0;
  int steps = 0;
  double time = 0.0;
  bool completed = false;
  std::string abort_reason;
  ViolationReport sweep;
  double min_first = 0.0;  // over the final averages and nodes
  double second = 0.0;
  double conservation_drift = 0.0;  // max_k |S_k(T) - S_k(0)| / sum_j dx_j |U_bar_jk(0)|
  std::vector<double> centers;
  std::vector<double> nodes;                     // x_0 .. x_N
  std::vector<std::vector<double>> averages;     // conservative, per cell
  std::vector<std::vector<double>> node_values;  // primitive, per node 0..N
  std::vector<StepRecord> history;
  std::vector<std::filesystem::path> files;
  double seconds = 0.0;
};

/// Time loop to t_final, with output files under <out>/<name>/.
RunSummary run(const RunConfig& cfg, const RunOptions& options = {});

// ---------------------------------------------------------------------------

struct ConvergenceRow {
  int cells = 0;
  double cell_error = 0.0;   // l1 of the first component of the cell averages
  double point_error = 0.0;  // mean abs error of the first component at the nodes
  double cell_order = 0.0;   // NaN unless the previous row has half the cells
  double point_order = 0.0;
  long long violations = 0;
  double seconds = 0.0;
};

/// Runs the config at each cell count and compares against the exact
/// translated solution.
std::vector<ConvergenceRow> convergence(const RunConfig& cfg, const std::vector<int>& cells,
                                        const RunOptions& options = {});

void write_convergence_csv(const std::filesystem::path& path,
                           const std::vector<ConvergenceRow>& rows);

// ---------------------------------------------------------------------------

struct ReferenceSummary {
  int cells = 0;
  int steps = 0;
  double time = 0.0;
  std::vector<double> centers;
  std::vector<std::vector<double>> averages;  // conservative
  std::filesystem::path file;
};

/// First-order LLF finite volume run with forward Euler on `cells` cells
/// (config value when 0), written as <out>/<name>/reference.csv.
ReferenceSummary reference_run(const RunConfig& cfg, int cells = 0,
                               const RunOptions& options = {});

}  // namespace pampa

#endif  // PAMPA_DRIVER_HPP_
