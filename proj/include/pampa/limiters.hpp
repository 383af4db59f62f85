#ifndef PAMPA_LIMITERS_HPP_
#define PAMPA_LIMITERS_HPP_

#include "pampa/state.hpp"
#include "pampa/systems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>

namespace pampa {

/// Per-cell point values after limiting: left endpoint, midpoint, right
/// endpoint, and the blend factor toward the cell average.
/// Invariant: avg == left/6 + 4 mid/6 + right/6 (cell average decomposition).
template <int D>
struct LimitedTriple {
  State<D> left;
  State<D> mid;
  State<D> right;
  double theta = 1.0;
};

/// Midpoint value fixed by the cell average decomposition:
/// U_mid = 3/2 avg - 1/4 (U_left + U_right).
template <int D>
State<D> midpoint_value(const State<D>& avg, const State<D>& left, const State<D>& right) {
  return 1.5 * avg - 0.25 * (left + right);
}

template <int D>
LimitedTriple<D> unlimited_triple(const State<D>& avg, const State<D>& left, const State<D>& right) {
  return {left, midpoint_value(avg, left, right), right, 1.0};
}

// ---------------------------------------------------------------------------
// Local scaling limiter

/// Scalar scaling limiter for G = [lo, hi]. Blends all three point values
/// toward the average with theta chosen so the midpoint lands in G.
LimitedTriple<1> idp_limit_scalar(double avg, double left, double mid, double right, double lo,
                                  double hi);

namespace detail {

// Closed floors: the scaling formulas land exactly on the floor.
template <class Sys>
bool meets_floors(const Sys& sys, const State<Sys::dim>& u, const Floors& fl) {
  if (!u.allFinite() || !(u[0] >= fl.rho) || !(u[0] > 0.0)) return false;
  return sys.pressure(u) >= fl.p;
}

}  // namespace detail

/// Two-stage scaling limiter for Euler/MHD: density stage on the midpoint,
/// pressure stage on the density-limited midpoint, endpoints blended with
/// theta = theta_rho * theta_p. A bounded halving of theta absorbs roundoff
/// when the result sits right on a floor.
template <class Sys>
LimitedTriple<Sys::dim> idp_limit_system(const Sys& sys, const State<Sys::dim>& avg,
                                         const State<Sys::dim>& left, const State<Sys::dim>& mid,
                                         const State<Sys::dim>& right, const Floors& fl) {
  if (!(fl.rho > 0.0) || !(fl.p > 0.0)) throw ConfigError("positivity floors must be positive");
  if (!detail::meets_floors(sys, avg, fl))
    throw InvariantViolation("cell average violates the positivity floors");

  const double rho_bar = avg[0];
  double theta_rho = 1.0;
  if (mid[0] < fl.rho) theta_rho = (rho_bar - fl.rho) / (rho_bar - mid[0]);
  State<Sys::dim> star = lerp(avg, mid, theta_rho);
  for (int k = 0; k < 8 && !(star[0] >= fl.rho); ++k) {
    theta_rho *= 1.0 - 1e-14 * (1 << k);
    star = lerp(avg, mid, theta_rho);
  }
  if (!(star[0] >= fl.rho)) {
    theta_rho = 0.0;
    star = avg;
  }

  double theta_p = 1.0;
  const double p_star = sys.pressure(star);
  if (p_star < fl.p) {
    const double p_bar = sys.pressure(avg);
    theta_p = (p_bar - fl.p) / (p_bar - p_star);
  }

  double theta = theta_rho * theta_p;
  State<Sys::dim> limited = lerp(avg, mid, theta);
  for (int k = 0; k < 3 && !detail::meets_floors(sys, limited, fl); ++k) {
    theta *= 0.5;
    limited = lerp(avg, mid, theta);
  }
  if (!detail::meets_floors(sys, limited, fl)) {
    theta = 0.0;
    limited = avg;
  }
  if (theta == 1.0) return {left, mid, right, 1.0};
  return {lerp(avg, left, theta), limited, lerp(avg, right, theta), theta};
}

/// Dispatches to the scalar or the density/pressure limiter.
template <class Sys>
LimitedTriple<Sys::dim> idp_limit(const Sys& sys, const State<Sys::dim>& avg,
                                  const State<Sys::dim>& left, const State<Sys::dim>& mid,
                                  const State<Sys::dim>& right, const Floors& fl) {
  if constexpr (Sys::dim == 1) {
    return idp_limit_scalar(avg[0], left[0], mid[0], right[0], sys.lower(), sys.upper());
  } else {
    return idp_limit_system(sys, avg, left, mid, right, fl);
  }
}

// ---------------------------------------------------------------------------
// Monotonicity-preserving limiter

/// sign * min |.| when all four arguments share a sign, else 0.
double minmod4(double a, double b, double c, double d);
double median3(double a, double b, double c);

struct MpParams {
  double alpha = 2.0;
  double beta = 4.0;
};

enum class MpSide {
  left,   // value at node j seen from cell j-1/2 (its right endpoint)
  right,  // value at node j seen from cell j+1/2 (its left endpoint)
};

/// Clips a nodal value into the MP interval built from five neighboring
/// cell averages. For MpSide::left the stencil is avg_{j-5/2} .. avg_{j+3/2};
/// for MpSide::right it is avg_{j-3/2} .. avg_{j+5/2}, and the rule is the
/// mirror image of the left one.
double mp_limit(const std::array<double, 5>& averages, double value, MpSide side,
                const MpParams& params = {});

// ---------------------------------------------------------------------------
// Oscillation elimination

/// The cell parabola through the endpoint values with the given average,
/// stored by its values at the left end, the middle and the right end.
template <int D>
struct CellParabola {
  State<D> left;
  State<D> mid;
  State<D> right;
  double dx = 1.0;

  static CellParabola from_average(const State<D>& avg, const State<D>& l, const State<D>& r,
                                   double dx) {
    return {l, midpoint_value(avg, l, r), r, dx};
  }

  /// Value at local coordinate xi = (x - x_left) / dx; xi outside [0, 1]
  /// evaluates the polynomial extension.
  State<D> at(double xi) const {
    const double b0 = 2.0 * (xi - 0.5) * (xi - 1.0);
    const double bm = -4.0 * xi * (xi - 1.0);
    const double b1 = 2.0 * xi * (xi - 0.5);
    return b0 * left + bm * mid + b1 * right;
  }

  State<D> second_derivative() const { return (4.0 * left - 8.0 * mid + 4.0 * right) / (dx * dx); }
};

/// Jump indicators eta^{L,R} and normalisers d^{L,R} comparing a cell
/// parabola against its neighbors' extensions; components are summed.
struct OeIndicators {
  double eta_left = 0.0;
  double eta_right = 0.0;
  double d_left = 0.0;
  double d_right = 0.0;
  double scale = 0.0;  // dx |avg|^2, reference size for the roundoff cutoff in oe_sigma
};

template <int D>
OeIndicators oe_indicators(const CellParabola<D>& prev, const CellParabola<D>& self,
                           const CellParabola<D>& next, const State<D>& avg) {
  // three-point Gauss-Legendre on [0, 1]
  static constexpr double kOff = 0.38729833462074168852;  // sqrt(3/5) / 2
  static constexpr std::array<double, 3> kXi = {0.5 - kOff, 0.5, 0.5 + kOff};
  static constexpr std::array<double, 3> kW = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

  const double h = self.dx;
  OeIndicators out;
  out.scale = h * avg.squaredNorm();
  for (int q = 0; q < 3; ++q) {
    const double xi = kXi[q];
    const State<D> p = self.at(xi);
    const State<D> pl = prev.at(1.0 + xi * h / prev.dx);
    const State<D> pr = next.at((xi - 1.0) * h / next.dx);
    const double w = kW[q] * h;
    out.eta_left += w * (p - pl).squaredNorm();
    out.eta_right += w * (p - pr).squaredNorm();
    const double own = (p - avg).squaredNorm();
    out.d_left += w * ((pl - avg).squaredNorm() + own);
    out.d_right += w * ((pr - avg).squaredNorm() + own);
  }
  const double h5 = h * h * h * h * h / 3.0;
  const State<D> dd = self.second_derivative();
  const State<D> dd_l = prev.second_derivative();
  const State<D> dd_r = next.second_derivative();
  out.eta_left += h5 * (dd - dd_l).squaredNorm();
  out.eta_right += h5 * (dd - dd_r).squaredNorm();
  out.d_left += h5 * dd_l.squaredNorm();
  out.d_right += h5 * dd_r.squaredNorm();
  return out;
}

/// Wave-speed weighted ratio sigma; zero when the weighted normaliser vanishes.
/// A normaliser below (1e-13)^2 of the scale is roundoff of flat data and counts as zero.
double oe_sigma(const OeIndicators& ind, double s_left, double s_right);

/// theta = exp(-beta dt / dx * sigma).
double oe_theta(double sigma, double beta, double dt, double dx);

/// Blends endpoints toward the average with theta and recomputes the
/// midpoint so the average decomposition still holds.
template <int D>
LimitedTriple<D> oe_apply(double theta, const State<D>& avg, const State<D>& left,
                          const State<D>& right) {
  if (theta >= 1.0) return unlimited_triple(avg, left, right);
  const State<D> l = lerp(avg, left, theta);
  const State<D> r = lerp(avg, right, theta);
  return {l, midpoint_value(avg, l, r), r, theta};
}

// ---------------------------------------------------------------------------

enum class Oscillation { none, oe, mp };

Oscillation parse_oscillation(std::string_view name);
std::string to_string(Oscillation kind);

}  // namespace pampa

#endif  // PAMPA_LIMITERS_HPP_
