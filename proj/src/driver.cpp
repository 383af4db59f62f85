#include "pampa/driver.hpp"

#include "pampa/initial.hpp"
#include "pampa/io.hpp"
#include "pampa/scheme.hpp"
#include "pampa/timeint.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace pampa {

std::vector<std::string> conservative_names(SystemKind kind) {
  switch (kind) {
    case SystemKind::advection:
    case SystemKind::burgers: return {"u"};
    case SystemKind::euler: return {"rho", "m", "E"};
    case SystemKind::mhd: return {"rho", "mx", "my", "mz", "By", "Bz", "E"};
  }
  return {};
}

std::vector<std::string> primitive_names(SystemKind kind) {
  switch (kind) {
    case SystemKind::advection:
    case SystemKind::burgers: return {"u"};
    case SystemKind::euler: return {"rho", "v", "p"};
    case SystemKind::mhd: return {"rho", "vx", "vy", "vz", "By", "Bz", "p"};
  }
  return {};
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool is_scalar(SystemKind k) { return k == SystemKind::advection || k == SystemKind::burgers; }

template <int D>
std::vector<double> to_vector(const State<D>& u) {
  return std::vector<double>(u.data(), u.data() + D);
}

template <class Sys>
std::vector<double> totals(const DofField<Sys>& f, const Grid1D& grid) {
  std::vector<double> s(Sys::dim, 0.0);
  for (int c = 0; c < grid.cells(); ++c)
    for (int i = 0; i < Sys::dim; ++i) s[i] += grid.dx(c) * f.averages[c][i];
  return s;
}

/// (min rho, min p) for systems, (min u, max u) for scalars, over averages
/// and node states. Pressures come from the raw formula so that a broken
/// state is reported instead of thrown.
template <class Sys>
std::pair<double, double> extremes(const Operator<Sys>& op, const DofField<Sys>& f) {
  double a = std::numeric_limits<double>::infinity();
  double b = Sys::dim == 1 ? -a : a;
  const auto visit = [&](const State<Sys::dim>& u) {
    a = std::min(a, u[0]);
    if constexpr (Sys::dim == 1) {
      b = std::max(b, u[0]);
    } else {
      b = std::min(b, oracle_pressure(op.system(), u));
    }
  };
  for (const auto& u : f.averages) visit(u);
  for (const auto& w : f.points) visit(op.node_state(w));
  return {a, b};
}

template <class Sys>
void write_cells(const std::filesystem::path& path, const RunConfig& cfg, const Operator<Sys>& op,
                 const DofField<Sys>& f) {
  std::vector<std::string> header{"x"};
  for (const auto& n : conservative_names(cfg.system.kind)) header.push_back(n + "_bar");
  const bool scalar = is_scalar(cfg.system.kind);
  if (!scalar)
    for (const auto& n : primitive_names(cfg.system.kind)) header.push_back(n);
  CsvWriter w(path, header);
  const auto& xc = op.grid().cell_centers();
  for (int c = 0; c < op.grid().cells(); ++c) {
    w << xc[c];
    for (int i = 0; i < Sys::dim; ++i) w << f.averages[c][i];
    if constexpr (Sys::dim > 1) {
      const auto prim = to_primitive_vector(op.system(), f.averages[c]);
      for (double v : prim) w << v;
    }
    w.end_row();
  }
}

template <class Sys>
std::vector<std::vector<double>> node_primitives(const Operator<Sys>& op, const DofField<Sys>& f) {
  const int n = op.grid().cells();
  const GhostMap map(op.boundary(), n);
  std::vector<std::vector<double>> out;
  out.reserve(n + 1);
  for (int j = 0; j <= n; ++j) {
    const State<Sys::dim> u = op.node_state(f.points[map.node(j).index]);
    if constexpr (Sys::dim == 1) {
      out.push_back({u[0]});
    } else {
      // raw primitive map so a broken state still prints
      State<Sys::dim> v = u;
      for (int i = 1; i < Sys::dim; ++i) v[i] = u[i] / u[0];
      if constexpr (Sys::dim == 7) {
        v[4] = u[4];
        v[5] = u[5];
      }
      v[Sys::dim - 1] = oracle_pressure(op.system(), u);
      out.push_back(to_vector<Sys::dim>(v));
    }
  }
  return out;
}

template <class Sys>
void write_nodes(const std::filesystem::path& path, const RunConfig& cfg, const Operator<Sys>& op,
                 const std::vector<std::vector<double>>& prims) {
  std::vector<std::string> header{"x"};
  for (const auto& n : primitive_names(cfg.system.kind)) header.push_back(n);
  CsvWriter w(path, header);
  const auto& x = op.grid().nodes();
  for (std::size_t j = 0; j < prims.size(); ++j) {
    w << x[j];
    for (double v : prims[j]) w << v;
    w.end_row();
  }
}

void write_diagnostics(const std::filesystem::path& path, const RunConfig& cfg,
                       const std::vector<StepRecord>& history) {
  const bool scalar = is_scalar(cfg.system.kind);
  std::vector<std::string> header{"step", "time", "dt", "retries", "multistep",
                                  scalar ? "min_u" : "min_rho", scalar ? "max_u" : "min_p",
                                  "idp_active", "oscillation_active", "max_courant"};
  for (const auto& n : conservative_names(cfg.system.kind)) header.push_back("total_" + n);
  CsvWriter w(path, header);
  for (const auto& r : history) {
    w << r.step << r.time << r.dt << r.retries << static_cast<int>(r.multistep) << r.min_first
      << r.second << r.idp_active << r.oscillation_active << r.max_courant;
    for (double t : r.totals) w << t;
    w.end_row();
  }
}

void write_plot(const std::filesystem::path& dir, const RunConfig& cfg, const RunSummary& s) {
  const std::string label = primitive_names(cfg.system.kind).front();
  std::vector<SvgSeries> series;
  SvgSeries cells{"cell averages", s.centers, {}, true};
  for (const auto& u : s.averages) cells.y.push_back(u[0]);
  SvgSeries nodes{"point values", s.nodes, {}, false};
  for (const auto& v : s.node_values) nodes.y.push_back(v[0]);
  series.push_back(std::move(cells));
  series.push_back(std::move(nodes));
  const auto ref = dir / "reference.csv";
  if (std::filesystem::is_regular_file(ref)) {
    const CsvTable t = read_csv(ref);
    series.push_back(SvgSeries{"reference", t.values("x"), t.values(conservative_names(cfg.system.kind)[0] + "_bar"), false});
  }
  std::ostringstream title;
  title.imbue(std::locale::classic());
  title << cfg.name << ", N = " << cfg.cells << ", t = " << s.time;
  write_svg(dir / "solution.svg", title.str(), label, series);
}

void write_metadata(const std::filesystem::path& path, const RunConfig& cfg,
                    const RunOptions& opt, const std::string& extra) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << "# seed: " << opt.seed << "\n";
  if (!extra.empty()) out << extra;
  out << to_yaml(cfg);
}

/// Integrates one config to t_final. Fills `s` and returns the final field.
template <class Sys>
DofField<Sys> simulate(const Operator<Sys>& op, const RunConfig& cfg, const RunOptions& opt,
                       const std::filesystem::path& dir, RunSummary& s) {
  const auto t0 = Clock::now();
  const Grid1D& grid = op.grid();
  DofField<Sys> field = make_initial_field(op, cfg);
  const int snapshots = opt.snapshots.value_or(cfg.snapshots);

  DomainSweep<Sys> sweep(op);
  Integrator<Sys> integ(op, cfg.integrator);
  if (opt.sweep) integ.set_observer([&](const StageView<Sys>& v) { sweep(v); });

  const std::vector<double> initial_totals = totals(field, grid);
  std::vector<double> scale(Sys::dim, 0.0);
  for (int c = 0; c < grid.cells(); ++c)
    for (int i = 0; i < Sys::dim; ++i) scale[i] += grid.dx(c) * std::abs(field.averages[c][i]);

  if (opt.sweep) sweep.check_field(field, 0, -1);
  {
    StepRecord r;
    const auto [a, b] = extremes(op, field);
    r.min_first = a;
    r.second = b;
    r.totals = initial_totals;
    s.history.push_back(r);
  }

  double t = 0.0;
  int next_log = 1;
  try {
    while (t < cfg.t_final) {
      if (opt.sweep && opt.stop_on_violation && !sweep.report().empty()) {
        s.abort_reason = "domain violation";
        break;
      }
      const double remaining = cfg.t_final - t;
      const double dt_candidate = op.compute_dt(field, cfg.cfl) * integ.cfl_scale();
      const StepReport rep = integ.step(field, t, dt_candidate, remaining);
      t = rep.dt >= remaining ? cfg.t_final : t + rep.dt;
      ++s.steps;

      StepRecord r;
      r.step = s.steps;
      r.time = t;
      r.dt = rep.dt;
      r.retries = rep.retries;
      r.multistep = rep.multistep;
      r.idp_active = rep.idp_active;
      r.oscillation_active = rep.oscillation_active;
      r.max_courant = rep.max_courant;
      const auto [a, b] = extremes(op, field);
      r.min_first = a;
      r.second = b;
      r.totals = totals(field, grid);
      s.history.push_back(std::move(r));

      if (opt.write_files && snapshots > 0 && s.steps % snapshots == 0) {
        std::ostringstream name;
        name << "cells_" << std::setw(6) << std::setfill('0') << s.steps << ".csv";
        write_cells(dir / "snapshots" / name.str(), cfg, op, field);
      }
      if (opt.log && t >= 0.1 * next_log * cfg.t_final) {
        while (t >= 0.1 * next_log * cfg.t_final) ++next_log;
        std::ostringstream os;
        os << cfg.name << ": t = " << t << " after " << s.steps << " steps";
        opt.log(os.str());
      }
    }
  } catch (const std::exception& e) {
    s.abort_reason = e.what();
  }
  if (opt.sweep) sweep.check_field(field, s.steps, -1);
  s.time = t;
  s.completed = s.abort_reason.empty() && t == cfg.t_final;
  if (opt.sweep && !sweep.report().empty() && s.abort_reason.empty())
    s.abort_reason = "domain violation";
  s.sweep = sweep.report();

  const std::vector<double> final_totals = totals(field, grid);
  double fallback = 0.0;
  for (double v : scale) fallback = std::max(fallback, v);
  s.conservation_drift = 0.0;
  for (int i = 0; i < Sys::dim; ++i) {
    const double denom = scale[i] > 0.0 ? scale[i] : (fallback > 0.0 ? fallback : 1.0);
    s.conservation_drift =
        std::max(s.conservation_drift, std::abs(final_totals[i] - initial_totals[i]) / denom);
  }
  const auto [a, b] = extremes(op, field);
  s.min_first = a;
  s.second = b;
  s.centers = grid.cell_centers();
  s.nodes = grid.nodes();
  s.averages.clear();
  for (const auto& u : field.averages) s.averages.push_back(to_vector<Sys::dim>(u));
  s.node_values = node_primitives(op, field);
  s.seconds = seconds_since(t0);
  return field;
}

std::filesystem::path output_dir(const RunConfig& cfg, const RunOptions& opt) {
  return opt.out_dir.value_or(std::filesystem::path(cfg.out_dir)) / cfg.name;
}

}  // namespace

RunSummary run(const RunConfig& cfg, const RunOptions& opt) {
  validate(cfg);
  const auto dir = output_dir(cfg, opt);
  const int snapshots = opt.snapshots.value_or(cfg.snapshots);
  if (opt.write_files) {
    std::filesystem::create_directories(dir);
    if (snapshots > 0) std::filesystem::create_directories(dir / "snapshots");
  }
  return with_system(cfg.system, [&](auto sys) {
    using Sys = decltype(sys);
    RunSummary s;
    s.name = cfg.name;
    s.system = cfg.system.kind;
    s.cells = cfg.cells;
    const Operator<Sys> op(sys, build_uniform_grid(cfg.a, cfg.b, cfg.cells), cfg.boundary,
                           cfg.scheme);
    const DofField<Sys> field = simulate(op, cfg, opt, dir, s);
    if (opt.write_files) {
      write_metadata(dir / "run.yaml", cfg, opt, "");
      write_cells(dir / "cells.csv", cfg, op, field);
      write_nodes(dir / "nodes.csv", cfg, op, s.node_values);
      write_diagnostics(dir / "diagnostics.csv", cfg, s.history);
      s.files = {dir / "run.yaml", dir / "cells.csv", dir / "nodes.csv", dir / "diagnostics.csv"};
      if (cfg.svg) {
        write_plot(dir, cfg, s);
        s.files.push_back(dir / "solution.svg");
      }
    }
    return s;
  });
}

// ---------------------------------------------------------------------------

std::vector<ConvergenceRow> convergence(const RunConfig& base, const std::vector<int>& cells,
                                        const RunOptions& opt) {
  if (base.exact != "translate")
    throw ConfigError("convergence needs an exact solution ('exact: translate')");
  if (base.boundary != BoundaryKind::periodic)
    throw ConfigError("the translated exact solution needs periodic boundaries");
  if (cells.empty()) throw ConfigError("no cell counts given");
  std::vector<ConvergenceRow> rows;
  for (int n : cells) {
    RunConfig cfg = base;
    cfg.cells = n;
    validate(cfg);
    RunOptions o = opt;
    o.write_files = false;
    ConvergenceRow row = with_system(cfg.system, [&](auto sys) {
      using Sys = decltype(sys);
      const Operator<Sys> op(sys, build_uniform_grid(cfg.a, cfg.b, n), cfg.boundary, cfg.scheme);
      RunSummary s;
      const DofField<Sys> f = simulate(op, cfg, o, {}, s);
      if (!s.completed) throw InvariantViolation("N = " + std::to_string(n) + ": " + s.abort_reason);
      const DofField<Sys> ex = translated_exact(op, cfg, s.time);
      ConvergenceRow r;
      r.cells = n;
      for (int c = 0; c < n; ++c)
        r.cell_error += std::abs(f.averages[c][0] - ex.averages[c][0]) * op.grid().dx(c);
      r.cell_error /= cfg.b - cfg.a;
      const int m = op.distinct_nodes();
      for (int j = 0; j < m; ++j)
        r.point_error += std::abs(op.node_state(f.points[j])[0] - ex.points[j][0]);
      r.point_error /= m;
      r.violations = s.sweep.total;
      r.seconds = s.seconds;
      return r;
    });
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.cell_order = row.point_order = nan;
    if (!rows.empty() && rows.back().cells * 2 == n) {
      row.cell_order = std::log2(rows.back().cell_error / row.cell_error);
      row.point_order = std::log2(rows.back().point_error / row.point_error);
    }
    if (opt.log) {
      std::ostringstream os;
      os.precision(4);
      os << "N = " << n << ": cell error " << row.cell_error << ", point error " << row.point_error
         << " (" << row.seconds << " s)";
      opt.log(os.str());
    }
    rows.push_back(row);
  }
  return rows;
}

void write_convergence_csv(const std::filesystem::path& path,
                           const std::vector<ConvergenceRow>& rows) {
  CsvWriter w(path, {"N", "cell_error", "cell_order", "point_error", "point_order", "violations",
                     "seconds"});
  for (const auto& r : rows) {
    w << r.cells << r.cell_error << r.cell_order << r.point_error << r.point_order << r.violations
      << r.seconds;
    w.end_row();
  }
}

// ---------------------------------------------------------------------------

ReferenceSummary reference_run(const RunConfig& base, int cells, const RunOptions& opt) {
  RunConfig cfg = base;
  cfg.cells = cells > 0 ? cells : (base.reference_cells > 0 ? base.reference_cells : base.cells);
  validate(cfg);
  const auto dir = output_dir(cfg, opt);
  if (opt.write_files) std::filesystem::create_directories(dir);

  return with_system(cfg.system, [&](auto sys) {
    using Sys = decltype(sys);
    using StateT = State<Sys::dim>;
    const Grid1D grid = build_uniform_grid(cfg.a, cfg.b, cfg.cells);
    const int n = grid.cells();
    // Point values are not evolved; the operator only supplies initial averages.
    SchemeOptions so = cfg.scheme;
    so.point_variables = PointVariables::primitive;
    const Operator<Sys> op(sys, grid, cfg.boundary, so);
    std::vector<StateT> u = make_initial_field(op, cfg).averages;
    const GhostMap map(cfg.boundary, n);

    ReferenceSummary out;
    out.cells = n;
    double t = 0.0;
    std::vector<StateT> flux(n + 1);
    std::vector<double> speed(n + 1);
    const auto ghost = [&](int c) -> StateT {
      const GhostSource g = map.cell(c);
      if constexpr (Sys::has_velocity) {
        if (g.mirror) return sys.reflect_conserved(u[g.index]);
      }
      return u[g.index];
    };
    while (t < cfg.t_final) {
      double rate = 0.0;
      for (int j = 0; j <= n; ++j) {
        const StateT ul = ghost(j - 1), ur = ghost(j);
        speed[j] = sys.idp_pair_speed(ul, ur);
        flux[j] = 0.5 * (sys.flux(ul) + sys.flux(ur)) - 0.5 * speed[j] * (ur - ul);
      }
      for (int c = 0; c < n; ++c) rate = std::max(rate, std::max(speed[c], speed[c + 1]) / grid.dx(c));
      const double remaining = cfg.t_final - t;
      const double dt = rate > 0.0 ? std::min(cfg.reference_cfl / rate, remaining) : remaining;
      for (int c = 0; c < n; ++c) u[c] -= dt / grid.dx(c) * (flux[c + 1] - flux[c]);
      t = dt >= remaining ? cfg.t_final : t + dt;
      ++out.steps;
    }
    out.time = t;
    out.centers = grid.cell_centers();
    for (const auto& v : u) out.averages.push_back(to_vector<Sys::dim>(v));

    if (opt.write_files) {
      out.file = dir / "reference.csv";
      std::vector<std::string> header{"x"};
      for (const auto& nm : conservative_names(cfg.system.kind)) header.push_back(nm + "_bar");
      CsvWriter w(out.file, header);
      for (int c = 0; c < n; ++c) {
        w << out.centers[c];
        for (int i = 0; i < Sys::dim; ++i) w << u[c][i];
        w.end_row();
      }
      std::ostringstream extra;
      extra << "# reference: first-order local Lax-Friedrichs, forward Euler, " << n
            << " cells, cfl " << cfg.reference_cfl << "\n";
      write_metadata(dir / "reference.yaml", cfg, opt, extra.str());
    }
    return out;
  });
}

}  // namespace pampa
