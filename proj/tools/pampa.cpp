// Command-line front end: run presets, convergence studies, reference
// solutions and the verification suites.

#include "pampa/config.hpp"
#include "pampa/driver.hpp"
#include "pampa/io.hpp"
#include "pampa/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>

namespace {

void log_line(const std::string& s) { std::cerr << s << '\n'; }

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

int cmd_run(const std::string& target, const pampa::RunOptions& opt, int cells) {
  pampa::RunConfig cfg = pampa::resolve_config(target);
  if (cells > 0) cfg.cells = cells;
  const pampa::RunSummary s = pampa::run(cfg, opt);
  const bool scalar =
      cfg.system.kind == pampa::SystemKind::advection || cfg.system.kind == pampa::SystemKind::burgers;
  std::cout << s.name << ": " << (s.completed ? "completed" : "aborted") << " at t = " << num(s.time, 10)
            << " after " << s.steps << " steps (" << num(s.seconds, 3) << " s)\n";
  if (scalar) {
    std::cout << "  final range [" << num(s.min_first, 17) << ", " << num(s.second, 17) << "]\n";
  } else {
    std::cout << "  final min rho " << num(s.min_first, 6) << ", min p " << num(s.second, 6) << "\n";
  }
  std::cout << "  conservation drift " << num(s.conservation_drift, 3) << "\n";
  std::cout << "  sweep: " << s.sweep.summary() << "\n";
  if (!s.abort_reason.empty()) std::cout << "  reason: " << s.abort_reason << "\n";
  for (const auto& f : s.files) std::cout << "  wrote " << f.string() << "\n";
  return s.completed && s.sweep.empty() ? 0 : 2;
}

int cmd_convergence(const std::string& target, const std::vector<int>& ns,
                    const pampa::RunOptions& opt) {
  const pampa::RunConfig cfg = pampa::resolve_config(target);
  const auto rows = pampa::convergence(cfg, ns, opt);
  std::cout << "     N    cell error  order   point error  order\n";
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "%6d  %12.3e  %5.2f  %12.3e  %5.2f\n", r.cells, r.cell_error,
                  r.cell_order, r.point_error, r.point_order);
    std::cout << line;
  }
  const auto dir = opt.out_dir.value_or(cfg.out_dir) / cfg.name;
  std::filesystem::create_directories(dir);
  pampa::write_convergence_csv(dir / "convergence.csv", rows);
  std::cout << "wrote " << (dir / "convergence.csv").string() << "\n";
  long long violations = 0;
  for (const auto& r : rows) violations += r.violations;
  return violations == 0 ? 0 : 2;
}

int cmd_reference(const std::string& target, int cells, const pampa::RunOptions& opt) {
  const pampa::RunConfig cfg = pampa::resolve_config(target);
  const auto r = pampa::reference_run(cfg, cells, opt);
  std::cout << cfg.name << ": reference with " << r.cells << " cells, " << r.steps << " steps\n";
  std::cout << "wrote " << r.file.string() << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, const pampa::VerifyOptions& opt) {
  const auto results = pampa::verify(suite, opt);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << num(r.seconds, 3)
              << " s): " << r.detail << "\n";
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IDP PAMPA solver for 1D hyperbolic conservation laws"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 42;
  std::string out;
  int snapshots = -1;
  bool quiet = false;
  app.add_option("--seed", seed, "Seed for sampled suites (recorded with every run)");
  app.add_option("--out", out, "Output directory (overrides the config)");
  app.add_option("--snapshots", snapshots, "Write cell snapshots every N steps");
  app.add_flag("-q,--quiet", quiet, "No progress output");

  std::string target;
  int cells = 0;
  auto* run = app.add_subcommand("run", "Run a preset or config file");
  run->add_option("config", target, "Preset name or YAML path")->required();
  run->add_option("--cells", cells, "Override the cell count");

  std::vector<int> ns;
  auto* conv = app.add_subcommand("convergence", "Error table against the exact solution");
  conv->add_option("config", target, "Preset name or YAML path")->required();
  conv->add_option("--N", ns, "Cell counts, e.g. 20,40,80")->delimiter(',')->required();

  auto* ref = app.add_subcommand("reference", "First-order LLF reference solution");
  ref->add_option("config", target, "Preset name or YAML path")->required();
  ref->add_option("--cells", cells, "Cell count (default: the config's reference cells)");

  std::string suite;
  pampa::VerifyOptions vopt;
  auto* ver = app.add_subcommand("verify", "Oracle and property suites");
  ver->add_option("suite", suite, "splitting, thm43, sweep, transform, limiter or all")->required();
  ver->add_option("--system", vopt.system, "Splitting system: burgers, euler, mhd or all");
  ver->add_option("--samples", vopt.samples, "Samples per sampled suite");
  ver->add_option("--eps", vopt.eps, "eps for thm43");
  ver->add_option("--preset", vopt.presets, "Presets for the sweep suite");

  app.add_subcommand("list", "List bundled presets");

  CLI11_PARSE(app, argc, argv);

  pampa::RunOptions opt;
  opt.seed = seed;
  if (!out.empty()) opt.out_dir = out;
  if (snapshots >= 0) opt.snapshots = snapshots;
  if (!quiet) opt.log = log_line;
  vopt.seed = seed;

  try {
    if (*run) return cmd_run(target, opt, cells);
    if (*conv) return cmd_convergence(target, ns, opt);
    if (*ref) return cmd_reference(target, cells, opt);
    if (*ver) return cmd_verify(suite, vopt);
    for (const auto& name : pampa::list_presets()) std::cout << name << "\n";
    return 0;
  } catch (const pampa::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
