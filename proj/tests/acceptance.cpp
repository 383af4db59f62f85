// Acceptance checks: one PASS/FAIL line per criterion. Tolerances are fixed here.

#include "pampa/config.hpp"
#include "pampa/driver.hpp"
#include "pampa/io.hpp"
#include "pampa/oracle.hpp"
#include "pampa/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace pampa;
namespace fs = std::filesystem;

namespace {

// reference values
constexpr double kAdvectionError1280 = 2.14e-7;
constexpr double kEulerError1280 = 4.89e-9;
constexpr double kErrorFactor = 3.0;
constexpr double kAdvectionOrder = 2.9;
constexpr double kEulerOrder = 2.8;
constexpr double kDriftTol = 1e-12;
constexpr double kRoundTripTol = 1e-11;
constexpr double kCadTol = 1e-12;
constexpr double kThm43Tol = 1e-12;

const std::vector<int> kLadder = {20, 40, 80, 160, 320, 640, 1280};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      detail << " [" << why << "]";
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  if (!o.pass) ++failures;
  std::printf("criterion %2d %s: %s%s (%.1f s)\n", id, o.pass ? "PASS" : "FAIL", title.c_str(),
              o.detail.str().c_str(), since(t0));
  std::fflush(stdout);
}

RunOptions quiet() {
  RunOptions opt;
  opt.write_files = false;
  return opt;
}

void check_ladder(Outcome& o, const std::vector<ConvergenceRow>& rows, double min_order,
                  double target) {
  const std::size_t n = rows.size();
  for (std::size_t k = n - 2; k < n; ++k) {
    o.detail << " order(" << rows[k].cells << ")=" << rows[k].cell_order;
    o.require(rows[k].cell_order >= min_order, "order below " + format_number(min_order));
  }
  const double e = rows.back().cell_error;
  o.detail << " err(1280)=" << e;
  o.require(e <= kErrorFactor * target && e >= target / kErrorFactor, "N=1280 error off target");
}

}  // namespace

int main() {
  report(1, "advection convergence", [](Outcome& o) {
    const auto t0 = Clock::now();
    const auto rows = convergence(resolve_config("advection_smooth"), kLadder, quiet());
    check_ladder(o, rows, kAdvectionOrder, kAdvectionError1280);
    o.require(since(t0) < 120.0, "over 2 minutes");
  });

  report(2, "Euler smooth convergence (IDP, +OE, +MP)", [](Outcome& o) {
    for (Oscillation osc : {Oscillation::none, Oscillation::oe, Oscillation::mp}) {
      const auto t0 = Clock::now();
      RunConfig cfg = resolve_config("euler_smooth");
      cfg.scheme.oscillation = osc;
      const auto rows = convergence(cfg, kLadder, quiet());
      o.detail << " " << to_string(osc) << ":";
      check_ladder(o, rows, kEulerOrder, kEulerError1280);
      long long v = 0;
      for (const auto& r : rows) v += r.violations;
      o.require(v == 0, "domain violations");
      o.require(since(t0) < 300.0, "over 5 minutes");
    }
  });

  report(3, "Jiang-Shu sweep at 400 cells", [](Outcome& o) {
    RunConfig cfg = resolve_config("jiang_shu");
    cfg.cells = 400;
    cfg.t_final = 2.0;
    const RunSummary s = run(cfg, quiet());
    o.detail << " checked=" << s.sweep.checked << " violations=" << s.sweep.total;
    o.require(s.completed && s.sweep.empty(), "violations");
    o.require(s.seconds < 60.0, "over 1 minute");
  });

  report(4, "continuous-flux counterexample", [](Outcome& o) {
    const Thm43Record r = thm43_counterexample(0.1);
    o.detail << " continuous=" << format_number(r.continuous_average)
             << " idp=" << format_number(r.idp_average);
    o.require(std::abs(r.continuous_average - 1.1) <= kThm43Tol, "continuous value not 1.1");
    o.require(r.idp_average >= 0.0 && r.idp_average <= 1.0, "IDP value outside [0, 1]");
  });

  report(5, "positivity suite", [](Outcome& o) {
    const auto t0 = Clock::now();
    for (const char* name :
         {"double_rarefaction", "sedov", "blast_waves", "leblanc", "mhd_leblanc", "mhd_shock_tube"}) {
      const RunSummary s = run(resolve_config(name), quiet());
      o.detail << " " << name << "=" << (s.completed ? "ok" : "abort") << "/" << s.sweep.total;
      o.require(s.completed, std::string(name) + " aborted: " + s.abort_reason);
      o.require(s.sweep.empty(), std::string(name) + " has violations");
    }
    o.require(since(t0) < 1200.0, "over 20 minutes");
  });

  report(6, "conservation on periodic presets", [](Outcome& o) {
    for (const auto& name : list_presets()) {
      const RunConfig cfg = resolve_config(name);
      if (cfg.boundary != BoundaryKind::periodic) continue;
      const RunSummary s = run(cfg, quiet());
      o.detail << " " << name << "=" << s.conservation_drift;
      o.require(s.completed && s.conservation_drift < kDriftTol, name + " drift");
    }
  });

  report(7, "LF splitting, 1e5 Euler and 1e5 MHD pairs", [](Outcome& o) {
    const auto t0 = Clock::now();
    const auto e = sample_lf_splitting(SplittingSystem::euler, 100000, 42);
    const auto m = sample_lf_splitting(SplittingSystem::mhd, 100000, 42);
    o.detail << " euler failures=" << e.failures << " mhd failures=" << m.failures;
    o.require(e.passed() && m.passed(), "splitting failures");
    o.require(since(t0) < 30.0, "over 30 s");
  });

  report(8, "transform domain and round trip", [](Outcome& o) {
    for (SystemKind k : {SystemKind::euler, SystemKind::mhd}) {
      const auto d = check_transform_domain(k, 1000000, 42);
      const auto r = check_round_trip(k, 100000, 42);
      o.detail << " " << to_string(k) << ": failures=" << d.failures
               << " round_trip=" << r.max_relative_error;
      o.require(d.failures == 0, "W sample outside G");
      o.require(r.max_relative_error <= kRoundTripTol, "round trip error");
    }
  });

  report(9, "limiter cell average decomposition", [](Outcome& o) {
    for (SystemKind k : {SystemKind::burgers, SystemKind::euler}) {
      const CadCheck c = check_cad(k, 100000, 42);
      o.detail << " " << to_string(k) << ": err=" << c.max_relative_error
               << " out=" << c.out_of_domain;
      o.require(c.max_relative_error <= kCadTol, "decomposition error");
      o.require(c.out_of_domain == 0, "limited value outside G");
    }
  });

  report(10, "Burgers bounds at every stage", [](Outcome& o) {
    RunConfig cfg = resolve_config("burgers");
    cfg.cells = 400;
    cfg.t_final = 0.5;
    const RunSummary s = run(cfg, quiet());
    o.detail << " checked=" << s.sweep.checked << " worst margin=" << s.sweep.worst_margin;
    o.require(s.completed && s.sweep.empty(), "values outside [-1, 2]");
    o.require(s.min_first >= -1.0 && s.second <= 2.0, "final field outside [-1, 2]");
  });

  report(11, "SVG golden structure", [](Outcome& o) {
    const auto golden = read_svg_series(fs::path(PAMPA_GOLDEN_DIR) / "sod.svg");
    const fs::path dir = fs::temp_directory_path() / "pampa_acceptance_svg";
    fs::remove_all(dir);
    RunOptions opt;
    opt.out_dir = dir;
    const RunSummary s = run(resolve_config("sod"), opt);
    const auto fresh = read_svg_series(dir / "sod" / "solution.svg");
    o.detail << " series=" << fresh.size() << "/" << golden.size();
    o.require(s.completed, "sod aborted");
    o.require(fresh.size() == golden.size(), "series count");
    for (std::size_t k = 0; k < std::min(fresh.size(), golden.size()); ++k)
      o.require(fresh[k].name == golden[k].name, "series name " + fresh[k].name);
    if (fresh.empty()) return;
    double prev = INFINITY;
    int inside = 0;
    for (std::size_t k = 0; k < fresh[0].x.size(); ++k) {
      if (fresh[0].x[k] < -1.4 || fresh[0].x[k] > -0.25) continue;
      o.require(fresh[0].y[k] <= prev, "rarefaction not monotone");
      prev = fresh[0].y[k];
      ++inside;
    }
    o.require(inside > 10, "rarefaction not resolved");
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
