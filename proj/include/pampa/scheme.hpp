#ifndef PAMPA_SCHEME_HPP_
#define PAMPA_SCHEME_HPP_

#include "pampa/limiters.hpp"
#include "pampa/mesh.hpp"
#include "pampa/state.hpp"
#include "pampa/systems.hpp"
#include "pampa/transform.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace pampa {

/// Largest CFL number for which the cell-average update stays in G.
inline constexpr double kMaxCfl = 1.0 / 6.0;

/// Local Lax-Friedrichs flux with the IDP pair speed. Returns F(U) itself
/// when both states coincide, so unlimited interfaces see the continuous flux.
template <class Sys>
State<Sys::dim> llf_flux(const Sys& sys, const State<Sys::dim>& ul, const State<Sys::dim>& ur) {
  if (ul == ur) return sys.flux(ul);
  const double lambda = sys.idp_pair_speed(ul, ur);
  return 0.5 * (sys.flux(ul) + sys.flux(ur)) - 0.5 * lambda * (ur - ul);
}

/// alpha_j = max wave speed over U_j and the two limited neighbor midpoints.
template <class Sys>
double spectral_radius_alpha(const Sys& sys, const State<Sys::dim>& node,
                             const State<Sys::dim>& mid_left, const State<Sys::dim>& mid_right) {
  return std::max({sys.max_wave_speed(node), sys.max_wave_speed(mid_left),
                   sys.max_wave_speed(mid_right)});
}

struct SchemeOptions {
  bool idp = true;
  Oscillation oscillation = Oscillation::none;
  MpParams mp;
  PointVariables point_variables = PointVariables::automatic_idp;
  double floor_cap = 1e-13;  // eps = min(floor_cap, smallest cell average)
};

/// Everything one residual evaluation produces.
template <class Sys>
struct StageResult {
  DofField<Sys> rhs;                              // dU/dt per cell, dW/dt per node
  std::vector<LimitedTriple<Sys::dim>> cells;     // limited triples, interior cells
  Floors floors;
  int idp_active = 0;          // cells with theta < 1
  int oscillation_active = 0;  // cells touched by OE or MP
  double courant_rate = 0.0;   // max of lambda_pair / dx and alpha_j / dx; times dt must stay <= 1/6
};

/// The spatial operator L(U, W) of the IDP PAMPA scheme on a fixed grid.
template <class Sys>
class Operator {
 public:
  using StateT = State<Sys::dim>;
  using Triple = LimitedTriple<Sys::dim>;
  static constexpr int kGhost = 3;

  Operator(Sys sys, Grid1D grid, BoundaryKind bc, SchemeOptions options = {})
      : sys_(std::move(sys)), grid_(std::move(grid)), bc_(bc), opt_(options),
        map_(bc, grid_.cells()) {
    if (bc == BoundaryKind::reflective && !Sys::has_velocity)
      throw ConfigError("reflective boundaries need a system with a velocity component");
  }

  const Sys& system() const { return sys_; }
  const Grid1D& grid() const { return grid_; }
  BoundaryKind boundary() const { return bc_; }
  const SchemeOptions& options() const { return opt_; }
  int distinct_nodes() const { return map_.distinct_nodes(); }

  StateT node_state(const StateT& w) const {
    return from_transformed(sys_, w, opt_.point_variables);
  }
  StateT node_variables(const StateT& u) const {
    return to_transformed(sys_, u, opt_.point_variables);
  }

  /// eps_rho = min(cap, min rho_bar), eps_p = min(cap, min p_bar).
  Floors floors(const DofField<Sys>& field) const {
    if constexpr (Sys::dim == 1) {
      return {};
    } else {
      Floors fl{opt_.floor_cap, opt_.floor_cap};
      for (const auto& u : field.averages) {
        fl.rho = std::min(fl.rho, u[0]);
        fl.p = std::min(fl.p, sys_.pressure(u));
      }
      return fl;
    }
  }

  /// dt = cfl * min_j dx_j / lambda_j, lambda_j over the cell average and both
  /// endpoint states. Infinity when nothing moves.
  double compute_dt(const DofField<Sys>& field, double cfl) const {
    if (!(cfl > 0.0) || cfl > kMaxCfl)
      throw ConfigError("cfl must lie in (0, 1/6]");
    const int n = grid_.cells();
    std::vector<double> node_speed(map_.distinct_nodes());
    for (int j = 0; j < map_.distinct_nodes(); ++j)
      node_speed[j] = sys_.max_wave_speed(node_state(field.points[j]));
    double dt = std::numeric_limits<double>::infinity();
    for (int c = 0; c < n; ++c) {
      const double lam =
          std::max({sys_.max_wave_speed(field.averages[c]), node_speed[map_.node(c).index],
                    node_speed[map_.node(c + 1).index]});
      if (lam > 0.0) dt = std::min(dt, cfl * grid_.dx(c) / lam);
    }
    return dt;
  }

  /// Limited triples for cells first..last (extended indices) in the order
  /// oscillation control, then IDP scaling.
  std::vector<Triple> limit(const ExtendedField<Sys>& ext, const std::vector<StateT>& node_u,
                            int first, int last, double dt, const Floors& fl,
                            std::vector<char>* touched_out = nullptr) const {
    const int w = ext.width;
    const auto nu = [&](int j) -> const StateT& { return node_u[j + w]; };
    std::vector<Triple> out(last - first + 1);
    if (touched_out) touched_out->assign(out.size(), 0);

    std::vector<StateT> avg_w;
    if constexpr (Sys::dim > 1) {
      if (opt_.oscillation == Oscillation::mp) {
        avg_w.resize(ext.averages.size());
        for (std::size_t k = 0; k < ext.averages.size(); ++k)
          avg_w[k] = node_variables(ext.averages[k]);
      }
    }

    for (int c = first; c <= last; ++c) {
      const StateT& avg = ext.avg(c);
      StateT left = nu(c);
      StateT right = nu(c + 1);
      bool touched = false;

      if (opt_.oscillation == Oscillation::oe) {
        const auto par = [&](int k) {
          return CellParabola<Sys::dim>::from_average(ext.avg(k), nu(k), nu(k + 1), ext.size(k));
        };
        const OeIndicators ind = oe_indicators(par(c - 1), par(c), par(c + 1), avg);
        double s_left = 0.0, s_right = 0.0, beta = 0.0;
        for (int k = c - 1; k <= c + 1; ++k) {
          const auto [lo, hi] = sys_.wave_speed_range(ext.avg(k));
          s_left = std::min(s_left, lo);
          s_right = std::max(s_right, hi);
          beta = std::max(beta, sys_.max_wave_speed(ext.avg(k)));
        }
        const double theta = oe_theta(oe_sigma(ind, s_left, s_right), beta, dt, ext.size(c));
        if (theta < 1.0) {
          left = lerp(avg, left, theta);
          right = lerp(avg, right, theta);
          touched = true;
        }
      } else if (opt_.oscillation == Oscillation::mp) {
        if constexpr (Sys::dim == 1) {
          const std::array<double, 5> s = {ext.avg(c - 2)[0], ext.avg(c - 1)[0], avg[0],
                                           ext.avg(c + 1)[0], ext.avg(c + 2)[0]};
          const double l = mp_limit(s, left[0], MpSide::right, opt_.mp);
          const double r = mp_limit(s, right[0], MpSide::left, opt_.mp);
          touched = l != left[0] || r != right[0];
          left[0] = l;
          right[0] = r;
        } else {
          StateT wl = ext.point(c);
          StateT wr = ext.point(c + 1);
          bool changed = false;
          for (int i = 0; i < Sys::dim; ++i) {
            std::array<double, 5> s;
            for (int k = 0; k < 5; ++k) s[k] = avg_w[c - 2 + k + w][i];
            const double l = mp_limit(s, wl[i], MpSide::right, opt_.mp);
            const double r = mp_limit(s, wr[i], MpSide::left, opt_.mp);
            changed = changed || l != wl[i] || r != wr[i];
            wl[i] = l;
            wr[i] = r;
          }
          if (changed) {
            left = node_state(wl);
            right = node_state(wr);
            touched = true;
          }
        }
      }

      out[c - first] = opt_.idp
                           ? idp_limit(sys_, avg, left, midpoint_value(avg, left, right), right, fl)
                           : unlimited_triple(avg, left, right);
      if (touched_out) (*touched_out)[c - first] = touched;
    }
    return out;
  }

  /// Full residual: limited triples, interface fluxes, cell and point updates.
  /// dt only enters through the OE damping factor.
  StageResult<Sys> evaluate(const DofField<Sys>& field, double dt) const {
    const int n = grid_.cells();
    const ExtendedField<Sys> ext = ghost_extend(sys_, field, grid_, bc_, kGhost);
    const int w = ext.width;

    std::vector<StateT> node_u(ext.points.size());
    for (std::size_t k = 0; k < ext.points.size(); ++k) node_u[k] = node_state(ext.points[k]);

    StageResult<Sys> res;
    res.floors = floors(field);
    // cells -1 .. n so every flux and every node sees both adjacent cells
    std::vector<char> touched;
    const std::vector<Triple> tri = limit(ext, node_u, -1, n, dt, res.floors, &touched);
    const auto cell = [&](int c) -> const Triple& { return tri[c + 1]; };
    for (int c = 0; c < n; ++c) {
      if (cell(c).theta < 1.0) ++res.idp_active;
      if (touched[c + 1]) ++res.oscillation_active;
    }

    // interface fluxes at nodes 0..n and the pair-speed Courant rate
    std::vector<StateT> flux(n + 1);
    std::vector<double> pair_speed(n + 1);
    for (int j = 0; j <= n; ++j) {
      const StateT& ul = cell(j - 1).right;
      const StateT& ur = cell(j).left;
      flux[j] = llf_flux(sys_, ul, ur);
      pair_speed[j] = sys_.idp_pair_speed(ul, ur);
    }
    if (bc_ == BoundaryKind::periodic) {
      flux[n] = flux[0];
      pair_speed[n] = pair_speed[0];
    }

    res.rhs.averages.resize(n);
    res.cells.resize(n);
    double rate = 0.0;
    for (int c = 0; c < n; ++c) {
      const double dx = grid_.dx(c);
      res.rhs.averages[c] = -(flux[c + 1] - flux[c]) / dx;
      res.cells[c] = cell(c);
      const double inner = sys_.idp_pair_speed(cell(c).left, cell(c).right);
      rate = std::max(rate, std::max({pair_speed[c], pair_speed[c + 1], inner}) / dx);
    }
    res.courant_rate = rate;

    // point values: original W at nodes, limited midpoints mapped into W
    const int m = map_.distinct_nodes();
    res.rhs.points.resize(m);
    for (int j = 0; j < m; ++j) {
      const StateT& wj = ext.points[j + w];
      const StateT& uj = node_u[j + w];
      const Triple& lc = cell(j - 1);
      const Triple& rc = cell(j);
      const StateT w_mid_l = node_variables(lc.mid);
      const StateT w_mid_r = node_variables(rc.mid);
      const double alpha = spectral_radius_alpha(sys_, uj, lc.mid, rc.mid);
      res.courant_rate =
          std::max(res.courant_rate, alpha / std::min(ext.size(j - 1), ext.size(j)));
      const Matrix<Sys::dim> jac = jacobian_transformed(sys_, uj, opt_.point_variables);
      const Matrix<Sys::dim> id = Matrix<Sys::dim>::Identity();
      const StateT d_minus = -1.5 * wj + 2.0 * w_mid_r - 0.5 * ext.points[j + 1 + w];
      const StateT d_plus = 0.5 * ext.points[j - 1 + w] - 2.0 * w_mid_l + 1.5 * wj;
      const StateT phi_minus = 0.5 * (jac - alpha * id) * d_minus / (0.5 * ext.size(j));
      const StateT phi_plus = 0.5 * (jac + alpha * id) * d_plus / (0.5 * ext.size(j - 1));
      res.rhs.points[j] = -(phi_minus + phi_plus);
    }
    if constexpr (Sys::has_velocity) {
      if (bc_ == BoundaryKind::reflective) {
        res.rhs.points[0][Sys::velocity_index] = 0.0;
        res.rhs.points[n][Sys::velocity_index] = 0.0;
      }
    }
    return res;
  }

 private:
  Sys sys_;
  Grid1D grid_;
  BoundaryKind bc_;
  SchemeOptions opt_;
  GhostMap map_;
};

}  // namespace pampa

#endif  // PAMPA_SCHEME_HPP_
