#ifndef PAMPA_INITIAL_HPP_
#define PAMPA_INITIAL_HPP_

#include "pampa/config.hpp"
#include "pampa/mesh.hpp"
#include "pampa/scheme.hpp"
#include "pampa/systems.hpp"

#include <array>
#include <string>
#include <vector>

namespace pampa {

using Primitive = std::vector<double>;

/// Named smooth profiles usable as initial-condition pieces.
Primitive evaluate_profile(const std::string& name, double x);
bool has_profile(const std::string& name);

/// Piecewise initial data in primitive variables.
class InitialCondition {
 public:
  InitialCondition(const InitialConfig& cfg, double a, double b);

  /// Value inside a piece; at a break the right piece is used.
  Primitive value(double x) const;
  /// Value at a grid node, honouring the node rule when x sits on a break.
  Primitive node_value(double x) const;
  /// Breaks and kinks strictly inside (xl, xr).
  std::vector<double> kinks_in(double xl, double xr) const;

 private:
  const Primitive& piece_state(std::size_t k, double x, Primitive& scratch) const;
  std::size_t piece_index(double x) const;

  InitialConfig cfg_;
  double tol_;
};

/// Five-point Gauss-Legendre nodes and weights on [0, 1].
const std::array<double, 5>& gauss5_nodes();
const std::array<double, 5>& gauss5_weights();

template <class Sys>
State<Sys::dim> from_primitive_vector(const Sys& sys, const Primitive& p) {
  if (p.size() != static_cast<std::size_t>(Sys::dim))
    throw ConfigError("primitive state has the wrong number of components");
  if constexpr (Sys::dim == 1) {
    (void)sys;
    return State<1>(p[0]);
  } else if constexpr (Sys::dim == 3) {
    return sys.from_primitive(p[0], p[1], p[2]);
  } else {
    State<Sys::dim> v;
    for (int i = 0; i < Sys::dim; ++i) v[i] = p[i];
    return sys.from_primitive(v);
  }
}

template <class Sys>
Primitive to_primitive_vector(const Sys& sys, const State<Sys::dim>& u) {
  if constexpr (Sys::dim == 1) {
    (void)sys;
    return {u[0]};
  } else {
    const State<Sys::dim> v = sys.to_primitive(u);
    return Primitive(v.data(), v.data() + Sys::dim);
  }
}

/// Cell average of U(f(x)) over [xl, xr], splitting the interval at kinks.
template <class Sys, class F>
State<Sys::dim> cell_average(const Sys& sys, F&& f, double xl, double xr,
                             const std::vector<double>& kinks) {
  std::vector<double> cuts{xl};
  cuts.insert(cuts.end(), kinks.begin(), kinks.end());
  cuts.push_back(xr);
  State<Sys::dim> sum = State<Sys::dim>::Zero();
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s], h = cuts[s + 1] - cuts[s];
    for (int q = 0; q < 5; ++q)
      sum += gauss5_weights()[q] * h * from_primitive_vector(sys, f(lo + gauss5_nodes()[q] * h));
  }
  return sum / (xr - xl);
}

/// Cell averages from Gauss quadrature, node values from point evaluation.
template <class Sys>
DofField<Sys> make_initial_field(const Operator<Sys>& op, const RunConfig& cfg) {
  const InitialCondition ic(cfg.initial, cfg.a, cfg.b);
  const Grid1D& grid = op.grid();
  const auto& x = grid.nodes();
  DofField<Sys> field;
  field.averages.resize(grid.cells());
  for (int c = 0; c < grid.cells(); ++c) {
    field.averages[c] = cell_average(
        op.system(), [&](double s) { return ic.value(s); }, x[c], x[c + 1],
        ic.kinks_in(x[c], x[c + 1]));
  }
  field.points.resize(op.distinct_nodes());
  for (int j = 0; j < op.distinct_nodes(); ++j)
    field.points[j] = op.node_variables(from_primitive_vector(op.system(), ic.node_value(x[j])));

  if constexpr (Sys::dim == 3) {
    if (cfg.initial.spike.enabled) {
      const int c = grid.cells() / 2;
      const double dx = grid.dx(c);
      field.averages[c][2] =
          cfg.initial.spike.per_dx ? cfg.initial.spike.amount / dx : cfg.initial.spike.amount * dx;
    }
  }
  return field;
}

/// Exact cell averages and node values of a translated initial profile at
/// time t on a periodic domain.
template <class Sys>
DofField<Sys> translated_exact(const Operator<Sys>& op, const RunConfig& cfg, double t) {
  const InitialCondition ic(cfg.initial, cfg.a, cfg.b);
  const double len = cfg.b - cfg.a;
  const auto wrap = [&](double s) {
    double y = std::fmod(s - cfg.a, len);
    if (y < 0.0) y += len;
    return cfg.a + y;
  };
  const auto f = [&](double s) { return ic.value(wrap(s - cfg.exact_speed * t)); };
  const Grid1D& grid = op.grid();
  const auto& x = grid.nodes();
  DofField<Sys> ex;
  ex.averages.resize(grid.cells());
  for (int c = 0; c < grid.cells(); ++c)
    ex.averages[c] = cell_average(op.system(), f, x[c], x[c + 1], {});
  ex.points.resize(op.distinct_nodes());
  for (int j = 0; j < op.distinct_nodes(); ++j)
    ex.points[j] = from_primitive_vector(op.system(), f(x[j]));  // conservative, not W
  return ex;
}

}  // namespace pampa

#endif  // PAMPA_INITIAL_HPP_
