#ifndef PAMPA_TRANSFORM_HPP_
#define PAMPA_TRANSFORM_HPP_

// Point-value variables W = Psi(U) and the Jacobian J of the
// non-conservative system W_t + J W_x = 0.
//
// automatic_idp:
//   scalar  w = (u - lo) / (hi - lo), inverted by the clipped ReLU
//           u = (hi - lo) min(max(w, 0), 1) + lo
//   Euler   W = (q, v, s),  q = ln(exp(rho / rho_ref) - 1), s = ln p - gamma ln rho
//   MHD     W = (q, vx, vy, vz, By, Bz, s)
// Every finite W maps back into the invariant domain.
//
// primitive: W = u (scalar), (rho, v, p) or (rho, vx, vy, vz, By, Bz, p).
// No positivity guarantee; kept for comparison runs.

#include "pampa/state.hpp"
#include "pampa/systems.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

namespace pampa {

enum class PointVariables { automatic_idp, primitive };

PointVariables parse_point_variables(std::string_view name);
std::string to_string(PointVariables kind);

namespace detail {

// Beyond this argument exp() is replaced by the asymptotic forms.
inline constexpr double kSoftplusSwitch = 30.0;

// When p is far below the kinetic (and magnetic) energy, E - 1/2 m^2 / rho
// cancels to zero or below in floating point. Raise E by single ulps until
// the recomputed pressure is positive again.
template <class Sys>
State<Sys::dim> nudge_energy(const Sys& sys, State<Sys::dim> u) {
  constexpr int e = Sys::dim - 1;
  for (int k = 0; k < 64 && !sys.in_domain(u); ++k)
    u[e] = std::nextafter(u[e], std::numeric_limits<double>::infinity());
  return u;
}

}  // namespace detail

/// ln(exp(x) - 1) for x > 0, stable for large x.
inline double softplus_inverse(double x) {
  if (x > detail::kSoftplusSwitch) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

/// ln(1 + exp(q)), stable for large q.
inline double softplus(double q) {
  if (q > detail::kSoftplusSwitch) return q + std::log1p(std::exp(-q));
  return std::log1p(std::exp(q));
}

/// d q / d rho = exp(rho/rho_ref - q) / rho_ref.
inline double softplus_inverse_slope(double rho, double rho_ref) {
  return 1.0 / (rho_ref * -std::expm1(-rho / rho_ref));
}

// ---------------------------------------------------------------------------
// scalar

inline State<1> to_transformed(const ScalarLaw& sys, const State<1>& u,
                               PointVariables kind = PointVariables::automatic_idp) {
  if (kind == PointVariables::primitive) return u;
  const double lo = sys.lower(), hi = sys.upper();
  const double v = u[0];
  if (!(v >= lo && v <= hi)) throw DomainError("scalar value outside [lo, hi]");
  if (v == hi) return State<1>(1.0);
  if (v == lo) return State<1>(0.0);
  return State<1>((v - lo) / (hi - lo));
}

inline State<1> from_transformed(const ScalarLaw& sys, const State<1>& w,
                                 PointVariables kind = PointVariables::automatic_idp) {
  if (kind == PointVariables::primitive) return w;
  const double clipped = std::min(std::max(w[0], 0.0), 1.0);
  const double u = (sys.upper() - sys.lower()) * clipped + sys.lower();
  return State<1>(std::min(std::max(u, sys.lower()), sys.upper()));
}

/// f'(u) at the clipped value; no subgradient at the kinks.
inline Matrix<1> jacobian_transformed(const ScalarLaw& sys, const State<1>& u,
                                      PointVariables = PointVariables::automatic_idp) {
  return Matrix<1>::Constant(sys.df(u[0]));
}

// ---------------------------------------------------------------------------
// Euler

inline State<3> to_transformed(const Euler& sys, const State<3>& u,
                               PointVariables kind = PointVariables::automatic_idp) {
  const State<3> prim = sys.to_primitive(u);
  if (kind == PointVariables::primitive) return prim;
  if (!(prim[0] > 0.0) || !(prim[2] > 0.0)) throw DomainError("Euler state outside G");
  return State<3>(softplus_inverse(prim[0] / sys.rho_ref()), prim[1],
                  std::log(prim[2]) - sys.gamma() * std::log(prim[0]));
}

inline State<3> from_transformed(const Euler& sys, const State<3>& w,
                                 PointVariables kind = PointVariables::automatic_idp) {
  if (kind == PointVariables::primitive) return sys.from_primitive(w);
  const double rho = sys.rho_ref() * softplus(w[0]);
  const double p = std::exp(w[2] + sys.gamma() * std::log(rho));
  return detail::nudge_energy(sys, sys.from_primitive(rho, w[1], p));
}

/// Closed-form J in (q, v, s):
///   [ v                          e^{rho/rho_ref - q} rho / rho_ref   0   ]
///   [ gamma rho_ref p / (e^{..} rho^2)   v                           p/rho ]
///   [ 0                          0                                  v   ]
inline Matrix<3> jacobian_transformed(const Euler& sys, const State<3>& u,
                                      PointVariables kind = PointVariables::automatic_idp) {
  const double rho = u[0];
  const double v = u[1] / rho;
  const double p = sys.pressure(u);
  const double g = sys.gamma();
  Matrix<3> j;
  if (kind == PointVariables::primitive) {
    j << v, rho, 0.0, 0.0, v, 1.0 / rho, 0.0, g * p, v;
    return j;
  }
  const double rr = sys.rho_ref();
  const double growth = 1.0 / -std::expm1(-rho / rr);  // e^{rho/rho_ref - q}
  j << v, growth * rho / rr, 0.0, g * rr * p / (growth * rho * rho), v, p / rho, 0.0, 0.0, v;
  return j;
}

// ---------------------------------------------------------------------------
// MHD

/// Quasi-linear matrix of the primitive system V_t + A(V) V_x = 0,
/// V = (rho, vx, vy, vz, By, Bz, p).
Matrix<7> mhd_primitive_jacobian(const Mhd& sys, const State<7>& prim);

/// dW/dV for the automatic_idp variables and its inverse; both differ from
/// the identity only in the q and s rows.
Matrix<7> mhd_variable_change(const Mhd& sys, const State<7>& prim);
Matrix<7> mhd_variable_change_inverse(const Mhd& sys, const State<7>& prim);

inline State<7> to_transformed(const Mhd& sys, const State<7>& u,
                               PointVariables kind = PointVariables::automatic_idp) {
  State<7> w = sys.to_primitive(u);
  if (kind == PointVariables::primitive) return w;
  const double rho = w[0], p = w[6];
  if (!(rho > 0.0) || !(p > 0.0)) throw DomainError("MHD state outside G");
  w[0] = softplus_inverse(rho / sys.rho_ref());
  w[6] = std::log(p) - sys.gamma() * std::log(rho);
  return w;
}

inline State<7> from_transformed(const Mhd& sys, const State<7>& w,
                                 PointVariables kind = PointVariables::automatic_idp) {
  if (kind == PointVariables::primitive) return sys.from_primitive(w);
  State<7> prim = w;
  prim[0] = sys.rho_ref() * softplus(w[0]);
  prim[6] = std::exp(w[6] + sys.gamma() * std::log(prim[0]));
  return detail::nudge_energy(sys, sys.from_primitive(prim));
}

/// J = (dW/dV) A(V) (dW/dV)^{-1}; equal to (dPsi/dU)(dF/dU)(dPsi/dU)^{-1}.
Matrix<7> jacobian_transformed(const Mhd& sys, const State<7>& u,
                               PointVariables kind = PointVariables::automatic_idp);

}  // namespace pampa

#endif  // PAMPA_TRANSFORM_HPP_
