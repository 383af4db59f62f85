#include "pampa/config.hpp"
#include "pampa/initial.hpp"
#include "pampa/oracle.hpp"
#include "pampa/timeint.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pampa;

namespace {

Operator<ScalarLaw> sine_op(int n) {
  return Operator<ScalarLaw>(ScalarLaw(ScalarFlux::advection, -2.0, 2.0),
                             build_uniform_grid(0.0, 1.0, n), BoundaryKind::periodic);
}

DofField<ScalarLaw> sine_field(const Operator<ScalarLaw>& op) {
  const double k = 2.0 * std::numbers::pi;
  const auto& x = op.grid().nodes();
  DofField<ScalarLaw> f;
  for (int c = 0; c < op.grid().cells(); ++c)
    f.averages.emplace_back(-(std::cos(k * x[c + 1]) - std::cos(k * x[c])) / (k * (x[c + 1] - x[c])));
  for (int j = 0; j < op.distinct_nodes(); ++j)
    f.points.push_back(op.node_variables(State<1>(std::sin(k * x[j]))));
  return f;
}

DofField<ScalarLaw> integrate(const Operator<ScalarLaw>& op, IntegratorKind kind, double dt,
                              double t_final) {
  Integrator<ScalarLaw> in(op, kind);
  DofField<ScalarLaw> f = sine_field(op);
  double t = 0.0;
  while (t_final - t > 1e-14) {
    const StepReport rep = in.step(f, t, dt, t_final - t);
    REQUIRE(rep.retries == 0);
    t = rep.time;
  }
  return f;
}

double distance(const DofField<ScalarLaw>& a, const DofField<ScalarLaw>& b) {
  double d = 0.0;
  for (std::size_t c = 0; c < a.averages.size(); ++c)
    d = std::max(d, std::abs(a.averages[c][0] - b.averages[c][0]));
  for (std::size_t j = 0; j < a.points.size(); ++j)
    d = std::max(d, std::abs(a.points[j][0] - b.points[j][0]));
  return d;
}

}  // namespace

TEST_CASE("integrator names") {
  CHECK(parse_integrator("ssp_rk3") == IntegratorKind::ssp_rk3);
  CHECK(parse_integrator("ssp_ms3") == IntegratorKind::ssp_ms3);
  CHECK(parse_integrator("forward_euler") == IntegratorKind::forward_euler);
  CHECK_THROWS_AS(parse_integrator("rk4"), ConfigError);
  CHECK(to_string(IntegratorKind::ssp_ms3) == "ssp_ms3");
}

TEST_CASE("axpy and blend") {
  DofField<ScalarLaw> a, b;
  a.averages = {State<1>(1.0)};
  a.points = {State<1>(2.0)};
  b.averages = {State<1>(3.0)};
  b.points = {State<1>(-1.0)};
  const auto s = axpy(a, 0.5, b);
  CHECK(s.averages[0][0] == 2.5);
  CHECK(s.points[0][0] == 1.5);
  const auto m = blend(0.25, a, 0.75, b);
  CHECK(m.averages[0][0] == 2.5);
  CHECK(m.points[0][0] == -0.25);
}

TEST_CASE("zero residual leaves the field unchanged") {
  const Operator<ScalarLaw> op = sine_op(12);
  for (IntegratorKind kind : {IntegratorKind::forward_euler, IntegratorKind::ssp_rk3, IntegratorKind::ssp_ms3}) {
    DofField<ScalarLaw> f;
    f.averages.assign(12, State<1>(0.4));
    f.points.assign(12, op.node_variables(State<1>(0.4)));
    Integrator<ScalarLaw> in(op, kind);
    double t = 0.0;
    for (int s = 0; s < 8; ++s) t = in.step(f, t, 1e-3, 1.0).time;
    for (const auto& u : f.averages) CHECK(u[0] == doctest::Approx(0.4).epsilon(1e-15));
    for (const auto& w : f.points) CHECK(op.node_state(w)[0] == doctest::Approx(0.4).epsilon(1e-15));
  }
}

TEST_CASE("multistep scale and startup") {
  const Operator<ScalarLaw> op = sine_op(20);
  Integrator<ScalarLaw> in(op, IntegratorKind::ssp_ms3);
  CHECK(in.cfl_scale() == doctest::Approx(1.0 / 3.0));
  DofField<ScalarLaw> f = sine_field(op);
  double t = 0.0;
  for (int s = 0; s < 5; ++s) {
    const StepReport rep = in.step(f, t, 1.0 / 400.0, 1.0);
    CHECK(rep.multistep == (s >= 3));
    CHECK(rep.dt == doctest::Approx(1.0 / 400.0));
    t = rep.time;
  }
}

TEST_CASE("property: third order in time") {
  const Operator<ScalarLaw> op = sine_op(20);
  const double t_final = 0.2;
  struct Case {
    IntegratorKind kind;
    double dt0;
  };
  for (const Case& c : {Case{IntegratorKind::ssp_rk3, 1.0 / 150.0}, Case{IntegratorKind::ssp_ms3, 1.0 / 400.0}}) {
    const DofField<ScalarLaw> ref = integrate(op, IntegratorKind::ssp_rk3, 1.0 / 9600.0, t_final);
    std::vector<double> err;
    for (int k = 0; k < 4; ++k) err.push_back(distance(integrate(op, c.kind, c.dt0 / (1 << k), t_final), ref));
    const double order = std::log2(err[2] / err[3]);
    INFO("kind " << to_string(c.kind) << " errors " << err[0] << " " << err[1] << " " << err[2] << " "
                 << err[3]);
    CHECK(order == doctest::Approx(3.0).epsilon(0.1 / 3.0));
  }
}

TEST_CASE("oversized steps are retried until every substep honours CFL 1/6") {
  const Operator<ScalarLaw> op = sine_op(20);
  for (IntegratorKind kind : {IntegratorKind::ssp_rk3, IntegratorKind::ssp_ms3}) {
    Integrator<ScalarLaw> in(op, kind);
    DofField<ScalarLaw> f = sine_field(op);
    const StepReport rep = in.step(f, 0.0, 0.1, 1.0);
    CHECK(rep.retries > 0);
    CHECK(rep.max_courant <= kMaxCfl);
  }
}

TEST_CASE("property: stages of a discontinuous Burgers run stay in G") {
  RunConfig cfg = resolve_config("burgers");
  cfg.cells = 100;
  const Operator<ScalarLaw> op(ScalarLaw(ScalarFlux::burgers, cfg.system.lower, cfg.system.upper),
                               build_uniform_grid(cfg.a, cfg.b, cfg.cells), cfg.boundary, cfg.scheme);
  for (IntegratorKind kind : {IntegratorKind::ssp_rk3, IntegratorKind::ssp_ms3}) {
    Integrator<ScalarLaw> in(op, kind);
    DomainSweep<ScalarLaw> sweep(op);
    in.set_observer([&](const StageView<ScalarLaw>& v) { sweep(v); });
    DofField<ScalarLaw> f = make_initial_field(op, cfg);
    double t = 0.0;
    while (cfg.t_final - t > 1e-14) {
      const double dt = op.compute_dt(f, cfg.cfl) * in.cfl_scale();
      t = in.step(f, t, dt, cfg.t_final - t).time;
    }
    sweep.check_field(f, -1, -1);
    CHECK(sweep.report().empty());
    CHECK(sweep.report().checked > 0);
  }
}
