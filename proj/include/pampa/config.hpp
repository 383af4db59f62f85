#ifndef PAMPA_CONFIG_HPP_
#define PAMPA_CONFIG_HPP_

#include "pampa/mesh.hpp"
#include "pampa/scheme.hpp"
#include "pampa/timeint.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace pampa {

enum class SystemKind { advection, burgers, euler, mhd };

SystemKind parse_system_kind(std::string_view name);
std::string to_string(SystemKind kind);

struct SystemConfig {
  SystemKind kind = SystemKind::advection;
  double gamma = 1.4;
  double rho_ref = 1.0;
  double lower = 0.0;  // scalar G = [lower, upper]
  double upper = 1.0;
  double speed = 1.0;  // advection speed
  double bx = 0.0;
};

enum class NodeRule { left, right, mean };

/// One piece of a piecewise initial condition: a constant primitive state
/// or a named function of x.
struct Piece {
  std::vector<double> state;
  std::string function;
};

/// Center-cell energy deposit used by the Sedov setups:
/// E = amount * dx (`per_dx = false`) or E = amount / dx (`per_dx = true`).
struct EnergySpike {
  bool enabled = false;
  double amount = 0.0;
  bool per_dx = false;
};

struct InitialConfig {
  std::vector<double> breaks;          // piece boundaries, increasing
  std::vector<Piece> pieces;           // breaks.size() + 1 entries
  std::vector<NodeRule> node_at_break; // which piece a node sitting on a break takes
  std::vector<double> quadrature_breaks;  // kinks inside function pieces
  EnergySpike spike;
};

struct RunConfig {
  std::string name = "run";
  SystemConfig system;
  double a = 0.0;
  double b = 1.0;
  int cells = 100;
  BoundaryKind boundary = BoundaryKind::periodic;
  double t_final = 1.0;
  IntegratorKind integrator = IntegratorKind::ssp_rk3;
  double cfl = 0.1;
  SchemeOptions scheme;
  InitialConfig initial;
  std::string exact;        // "translate" or empty
  double exact_speed = 1.0;  // translation speed of the exact solution
  int reference_cells = 0;
  double reference_cfl = 0.4;
  std::string out_dir = "out";
  int snapshots = 0;  // write a cell snapshot every this many steps; 0 disables
  bool svg = true;
};

/// Parses a YAML document. Unknown top-level keys are rejected.
RunConfig parse_config(const std::string& yaml_text);
RunConfig load_config(const std::filesystem::path& path);

/// Directory holding the bundled presets.
std::filesystem::path preset_directory();

/// A path to an existing file, or the name of a bundled preset.
RunConfig resolve_config(const std::string& preset_or_path);

std::vector<std::string> list_presets();

/// Serialises back to YAML (used for run metadata).
std::string to_yaml(const RunConfig& cfg);

void validate(const RunConfig& cfg);

}  // namespace pampa

#endif  // PAMPA_CONFIG_HPP_
