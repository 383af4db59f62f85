#include "pampa/config.hpp"
#include "pampa/initial.hpp"
#include "pampa/scheme.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pampa;

namespace {

Operator<Euler> euler_op(const RunConfig& cfg) {
  return Operator<Euler>(Euler(cfg.system.gamma, cfg.system.rho_ref),
                         build_uniform_grid(cfg.a, cfg.b, cfg.cells), cfg.boundary, cfg.scheme);
}

// Scalar field from pointwise values and exact cell averages.
template <class F, class A>
DofField<ScalarLaw> scalar_field(const Operator<ScalarLaw>& op, F&& u, A&& avg) {
  const auto& x = op.grid().nodes();
  DofField<ScalarLaw> f;
  for (int c = 0; c < op.grid().cells(); ++c) f.averages.emplace_back(avg(x[c], x[c + 1]));
  for (int j = 0; j < op.distinct_nodes(); ++j) f.points.push_back(op.node_variables(State<1>(u(x[j]))));
  return f;
}

}  // namespace

TEST_CASE("midpoint from the cell average decomposition") {
  CHECK(midpoint_value(State<1>(1.0 - 0.2 / 3.0), State<1>(1.0), State<1>(0.0))[0] ==
        doctest::Approx(1.15).epsilon(1e-15));
  CHECK(midpoint_value(State<1>(0.3), State<1>(0.3), State<1>(0.3))[0] == doctest::Approx(0.3));
  // odd data about the cell center: the midpoint equals the average
  CHECK(midpoint_value(State<1>(0.0), State<1>(-0.7), State<1>(0.7))[0] == 0.0);
}

TEST_CASE("LLF flux") {
  const ScalarLaw adv(ScalarFlux::advection, -1.0, 2.0);
  CHECK(llf_flux(adv, State<1>(1.0), State<1>(1.0))[0] == 1.0);
  CHECK(llf_flux(adv, State<1>(1.0), State<1>(0.0))[0] == 1.0);  // upwind
  const ScalarLaw burgers(ScalarFlux::burgers, -1.0, 2.0);
  CHECK(llf_flux(burgers, State<1>(2.0), State<1>(-1.0))[0] == doctest::Approx(4.25));
  const Euler e(1.4);
  const State<3> u = e.from_primitive(1.0, 0.3, 2.0);
  CHECK(llf_flux(e, u, u) == e.flux(u));
}

TEST_CASE("spectral radius over the node and both midpoints") {
  const Euler e(1.4);
  const State<3> rest = e.from_primitive(1.0, 0.0, 1.0);
  const State<3> fast = e.from_primitive(1.0, 2.0, 1.0);
  CHECK(spectral_radius_alpha(e, rest, rest, rest) == doctest::Approx(std::sqrt(1.4)));
  CHECK(spectral_radius_alpha(e, rest, rest, fast) == doctest::Approx(2.0 + std::sqrt(1.4)));
  CHECK(spectral_radius_alpha(e, fast, rest, rest) == doctest::Approx(2.0 + std::sqrt(1.4)));
}

TEST_CASE("compute_dt") {
  const Operator<ScalarLaw> op(ScalarLaw(ScalarFlux::advection, -1.0, 2.0),
                               build_uniform_grid(0.0, 1.0, 200), BoundaryKind::periodic);
  const auto f = scalar_field(op, [](double x) { return std::sin(x); },
                              [](double, double) { return 0.5; });
  CHECK(op.compute_dt(f, 0.1) == doctest::Approx(5e-4).epsilon(1e-12));
  CHECK_THROWS_AS(op.compute_dt(f, 0.2), ConfigError);
  CHECK_THROWS_AS(op.compute_dt(f, 0.0), ConfigError);
}

TEST_CASE("constant states are steady") {
  const Euler e(1.4);
  const State<3> u = e.from_primitive(0.8, 0.4, 1.3);
  for (BoundaryKind bc : {BoundaryKind::periodic, BoundaryKind::outflow}) {
    const Operator<Euler> op(e, build_uniform_grid(0.0, 1.0, 16), bc);
    DofField<Euler> f;
    f.averages.assign(16, u);
    f.points.assign(op.distinct_nodes(), op.node_variables(u));
    const auto r = op.evaluate(f, 1e-3);
    for (const auto& v : r.rhs.averages) CHECK(v.norm() <= 1e-13);
    for (const auto& v : r.rhs.points) CHECK(v.norm() <= 1e-12);
    CHECK(r.idp_active == 0);
  }
}

TEST_CASE("point update of linear advection") {
  // u = 0.2 + 0.3 x^2: the node stencil differentiates quadratics exactly.
  // W = (u - lo) / (hi - lo), so dW/dt = -u_x / 3 on [-1, 2].
  const Operator<ScalarLaw> op(ScalarLaw(ScalarFlux::advection, -1.0, 2.0),
                               build_uniform_grid(0.0, 1.0, 20), BoundaryKind::outflow);
  const auto u = [](double x) { return 0.2 + 0.3 * x * x; };
  const auto prim = [](double x) { return 0.2 * x + 0.1 * x * x * x; };
  const auto f = scalar_field(op, u, [&](double a, double b) { return (prim(b) - prim(a)) / (b - a); });
  const auto r = op.evaluate(f, 1e-3);
  const auto& x = op.grid().nodes();
  for (int j = 3; j <= 17; ++j) CHECK(r.rhs.points[j][0] == doctest::Approx(-0.2 * x[j]).epsilon(1e-10));
  for (int c = 3; c < 17; ++c)
    CHECK(r.rhs.averages[c][0] ==
          doctest::Approx(-(u(x[c + 1]) - u(x[c])) / op.grid().dx(c)).epsilon(1e-12));

  // linear data: dW/dt = -1/3 at interior nodes
  const auto g = scalar_field(op, [](double x) { return x; },
                              [](double a, double b) { return 0.5 * (a + b); });
  const auto rg = op.evaluate(g, 1e-3);
  for (int j = 2; j <= 18; ++j) CHECK(rg.rhs.points[j][0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("advection point update is upwind") {
  const Operator<ScalarLaw> op(ScalarLaw(ScalarFlux::advection, -1.0, 2.0),
                               build_uniform_grid(0.0, 1.0, 20), BoundaryKind::periodic);
  auto f = scalar_field(op, [](double x) { return 0.5 + 0.3 * std::sin(2 * std::numbers::pi * x); },
                        [](double a, double b) {
                          const double k = 2 * std::numbers::pi;
                          return 0.5 - 0.3 * (std::cos(k * b) - std::cos(k * a)) / (k * (b - a));
                        });
  const auto before = op.evaluate(f, 1e-3);
  f.averages[10][0] += 0.2;
  f.points[11][0] -= 0.3;
  const auto after = op.evaluate(f, 1e-3);
  CHECK(after.rhs.points[10][0] == before.rhs.points[10][0]);
  CHECK(after.rhs.points[11][0] != before.rhs.points[11][0]);
}

TEST_CASE("continuous flux when nothing is limited") {
  const RunConfig cfg = resolve_config("euler_smooth");
  const Operator<Euler> op = euler_op(cfg);
  const DofField<Euler> f = make_initial_field(op, cfg);
  const auto r = op.evaluate(f, 1e-3);
  CHECK(r.idp_active == 0);
  const Euler& e = op.system();
  for (int c = 0; c < op.grid().cells(); ++c) {
    const int jr = (c + 1) % op.distinct_nodes();
    const State<3> expect =
        -(e.flux(op.node_state(f.points[jr])) - e.flux(op.node_state(f.points[c]))) / op.grid().dx(c);
    CHECK((r.rhs.averages[c] - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
  }
}

TEST_CASE("property: periodic residuals conserve") {
  for (const char* name : {"euler_smooth", "burgers", "jiang_shu"}) {
    const RunConfig cfg = resolve_config(name);
    auto check = [&](const auto& op) {
      const auto f = make_initial_field(op, cfg);
      const auto r = op.evaluate(f, 1e-4);
      double scale = 0.0;
      auto total = r.rhs.averages[0];
      total.setZero();
      for (int c = 0; c < op.grid().cells(); ++c) {
        total += op.grid().dx(c) * r.rhs.averages[c];
        scale += op.grid().dx(c) * r.rhs.averages[c].cwiseAbs().sum();
      }
      CHECK(total.cwiseAbs().maxCoeff() <= 1e-12 * std::max(scale, 1.0));
    };
    if (cfg.system.kind == SystemKind::euler) {
      check(euler_op(cfg));
    } else {
      check(Operator<ScalarLaw>(
          ScalarLaw(cfg.system.kind == SystemKind::burgers ? ScalarFlux::burgers : ScalarFlux::advection,
                    cfg.system.lower, cfg.system.upper, cfg.system.speed),
          build_uniform_grid(cfg.a, cfg.b, cfg.cells), cfg.boundary, cfg.scheme));
    }
  }
}

TEST_CASE("property: cyclic shift of periodic data shifts the residual") {
  const RunConfig cfg = resolve_config("euler_smooth");
  const Operator<Euler> op = euler_op(cfg);
  const DofField<Euler> f = make_initial_field(op, cfg);
  DofField<Euler> g = f;
  const int n = op.grid().cells(), s = 7;
  for (int c = 0; c < n; ++c) {
    g.averages[(c + s) % n] = f.averages[c];
    g.points[(c + s) % n] = f.points[c];
  }
  const auto rf = op.evaluate(f, 1e-3), rg = op.evaluate(g, 1e-3);
  for (int c = 0; c < n; ++c) {
    // node coordinates differ in the last bits between cells, hence the tolerance
    CHECK((rg.rhs.averages[(c + s) % n] - rf.rhs.averages[c]).norm() <= 1e-11 * (1.0 + rf.rhs.averages[c].norm()));
    CHECK((rg.rhs.points[(c + s) % n] - rf.rhs.points[c]).norm() <= 1e-11 * (1.0 + rf.rhs.points[c].norm()));
  }
}

TEST_CASE("reflective walls stop the boundary velocity") {
  const RunConfig cfg = resolve_config("blast_waves");
  const Operator<Euler> op = euler_op(cfg);
  const DofField<Euler> f = make_initial_field(op, cfg);
  const auto r = op.evaluate(f, 1e-5);
  CHECK(r.rhs.points.front()[Euler::velocity_index] == 0.0);
  CHECK(r.rhs.points.back()[Euler::velocity_index] == 0.0);
  CHECK_THROWS_AS(Operator<ScalarLaw>(ScalarLaw(ScalarFlux::burgers, -1, 2), build_uniform_grid(0, 1, 8),
                                      BoundaryKind::reflective),
                  ConfigError);
}
