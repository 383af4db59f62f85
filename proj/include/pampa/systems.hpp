#ifndef PAMPA_SYSTEMS_HPP_
#define PAMPA_SYSTEMS_HPP_

#include "pampa/state.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <string>
#include <utility>

namespace pampa {

/// What every equation system offers to the scheme.
template <class S>
concept EquationSystem = requires(const S& s, const State<S::dim>& u, const Floors& fl) {
  { S::dim } -> std::convertible_to<int>;
  { S::has_velocity } -> std::convertible_to<bool>;
  { s.flux(u) } -> std::convertible_to<State<S::dim>>;
  { s.max_wave_speed(u) } -> std::convertible_to<double>;
  { s.wave_speed_range(u) } -> std::convertible_to<std::pair<double, double>>;
  { s.idp_pair_speed(u, u) } -> std::convertible_to<double>;
  { s.in_domain(u, fl) } -> std::convertible_to<bool>;
};

// ---------------------------------------------------------------------------
// Scalar conservation laws u_t + f(u)_x = 0 with G = [lo, hi].

enum class ScalarFlux { advection, burgers };

class ScalarLaw {
 public:
  static constexpr int dim = 1;
  static constexpr bool has_velocity = false;
  using StateT = State<1>;

  ScalarLaw(ScalarFlux kind, double lo, double hi, double speed = 1.0)
      : kind_(kind), lo_(lo), hi_(hi), speed_(speed) {
    if (!(lo < hi)) throw ConfigError("scalar bounds must satisfy lo < hi");
  }

  ScalarFlux kind() const { return kind_; }
  double lower() const { return lo_; }
  double upper() const { return hi_; }
  double advection_speed() const { return speed_; }

  double f(double u) const { return kind_ == ScalarFlux::advection ? speed_ * u : 0.5 * u * u; }
  double df(double u) const { return kind_ == ScalarFlux::advection ? speed_ : u; }

  StateT flux(const StateT& u) const { return StateT(f(u[0])); }
  double max_wave_speed(const StateT& u) const { return std::abs(df(u[0])); }
  std::pair<double, double> wave_speed_range(const StateT& u) const {
    const double a = df(u[0]);
    return {a, a};
  }
  /// max(|f'(uL)|, |f'(uR)|); valid for convex or concave f.
  double idp_pair_speed(const StateT& ul, const StateT& ur) const {
    return std::max(std::abs(df(ul[0])), std::abs(df(ur[0])));
  }
  /// Closed interval test; floors are not used for scalar laws.
  bool in_domain(const StateT& u, const Floors& = {}) const {
    return std::isfinite(u[0]) && u[0] >= lo_ && u[0] <= hi_;
  }

  StateT reflect_conserved(const StateT&) const {
    throw ConfigError("scalar laws have no velocity to reflect");
  }
  StateT reflect_transformed(const StateT&) const {
    throw ConfigError("scalar laws have no velocity to reflect");
  }

 private:
  ScalarFlux kind_;
  double lo_;
  double hi_;
  double speed_;
};

// ---------------------------------------------------------------------------
// Compressible Euler, U = (rho, rho v, E).

class Euler {
 public:
  static constexpr int dim = 3;
  static constexpr bool has_velocity = true;
  static constexpr int velocity_index = 1;  // both in U (momentum) and W (velocity)
  using StateT = State<3>;

  explicit Euler(double gamma = 1.4, double rho_ref = 1.0) : gamma_(gamma), rho_ref_(rho_ref) {
    if (!(gamma > 1.0)) throw ConfigError("gamma must exceed 1");
    if (!(rho_ref > 0.0)) throw ConfigError("rho_ref must be positive");
  }

  double gamma() const { return gamma_; }
  double rho_ref() const { return rho_ref_; }

  static double density(const StateT& u) { return u[0]; }

  double pressure(const StateT& u) const {
    if (!(u[0] > 0.0)) throw DomainError("non-positive density in pressure recovery");
    const double p = (gamma_ - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
    if (!std::isfinite(p)) throw DomainError("non-finite pressure");
    return p;
  }

  double sound_speed(const StateT& u) const {
    const double p = pressure(u);
    if (!(p > 0.0)) throw DomainError("non-positive pressure in sound speed");
    return std::sqrt(gamma_ * p / u[0]);
  }

  StateT from_primitive(double rho, double v, double p) const {
    return StateT(rho, rho * v, p / (gamma_ - 1.0) + 0.5 * rho * v * v);
  }
  StateT from_primitive(const StateT& prim) const { return from_primitive(prim[0], prim[1], prim[2]); }
  StateT to_primitive(const StateT& u) const { return StateT(u[0], u[1] / u[0], pressure(u)); }

  StateT flux(const StateT& u) const {
    const double v = u[1] / u[0];
    const double p = pressure(u);
    return StateT(u[1], u[1] * v + p, v * (u[2] + p));
  }

  double max_wave_speed(const StateT& u) const { return std::abs(u[1] / u[0]) + sound_speed(u); }

  std::pair<double, double> wave_speed_range(const StateT& u) const {
    const double v = u[1] / u[0];
    const double c = sound_speed(u);
    return {v - c, v + c};
  }

  /// max{|vL| + cL, |vR| + cR}.
  double idp_pair_speed(const StateT& ul, const StateT& ur) const {
    return std::max(max_wave_speed(ul), max_wave_speed(ur));
  }

  bool in_domain(const StateT& u, const Floors& fl = {}) const {
    if (!u.allFinite() || !(u[0] > fl.rho)) return false;
    const double p = (gamma_ - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
    return p > fl.p;
  }

  StateT reflect_conserved(const StateT& u) const { return StateT(u[0], -u[1], u[2]); }
  StateT reflect_transformed(const StateT& w) const { return StateT(w[0], -w[1], w[2]); }

 private:
  double gamma_;
  double rho_ref_;
};

// ---------------------------------------------------------------------------
// Ideal MHD, U = (rho, rho vx, rho vy, rho vz, By, Bz, E), Bx constant.

class Mhd {
 public:
  static constexpr int dim = 7;
  static constexpr bool has_velocity = true;
  static constexpr int velocity_index = 1;
  using StateT = State<7>;

  explicit Mhd(double gamma = 5.0 / 3.0, double bx = 0.0, double rho_ref = 1.0)
      : gamma_(gamma), bx_(bx), rho_ref_(rho_ref) {
    if (!(gamma > 1.0)) throw ConfigError("gamma must exceed 1");
    if (!(rho_ref > 0.0)) throw ConfigError("rho_ref must be positive");
  }

  double gamma() const { return gamma_; }
  double bx() const { return bx_; }
  double rho_ref() const { return rho_ref_; }

  static double density(const StateT& u) { return u[0]; }

  double pressure(const StateT& u) const {
    if (!(u[0] > 0.0)) throw DomainError("non-positive density in pressure recovery");
    const double p = raw_pressure(u);
    if (!std::isfinite(p)) throw DomainError("non-finite pressure");
    return p;
  }

  double magnetic_pressure(const StateT& u) const {
    return 0.5 * (bx_ * bx_ + u[4] * u[4] + u[5] * u[5]);
  }

  /// Fast magnetosonic speed.
  double fast_speed(const StateT& u) const {
    const double rho = u[0];
    const double p = pressure(u);
    if (!(p > 0.0)) throw DomainError("non-positive pressure in fast speed");
    const double b2 = bx_ * bx_ + u[4] * u[4] + u[5] * u[5];
    const double a = (gamma_ * p + b2) / rho;
    const double disc = std::max(a * a - 4.0 * gamma_ * p * bx_ * bx_ / (rho * rho), 0.0);
    return std::sqrt(0.5 * (a + std::sqrt(disc)));
  }

  /// Primitive V = (rho, vx, vy, vz, By, Bz, p).
  StateT from_primitive(const StateT& v) const {
    StateT u;
    const double rho = v[0];
    u << rho, rho * v[1], rho * v[2], rho * v[3], v[4], v[5],
        v[6] / (gamma_ - 1.0) + 0.5 * rho * (v[1] * v[1] + v[2] * v[2] + v[3] * v[3]) +
            0.5 * (bx_ * bx_ + v[4] * v[4] + v[5] * v[5]);
    return u;
  }
  StateT to_primitive(const StateT& u) const {
    StateT v;
    const double p = pressure(u);
    v << u[0], u[1] / u[0], u[2] / u[0], u[3] / u[0], u[4], u[5], p;
    return v;
  }

  StateT flux(const StateT& u) const {
    const double rho = u[0];
    const double vx = u[1] / rho, vy = u[2] / rho, vz = u[3] / rho;
    const double by = u[4], bz = u[5];
    const double p = pressure(u);
    const double pt = p + magnetic_pressure(u);
    StateT f;
    f << u[1], u[1] * vx + pt - bx_ * bx_, u[1] * vy - bx_ * by, u[1] * vz - bx_ * bz,
        by * vx - bx_ * vy, bz * vx - bx_ * vz,
        (u[6] + pt) * vx - bx_ * (bx_ * vx + by * vy + bz * vz);
    return f;
  }

  double max_wave_speed(const StateT& u) const { return std::abs(u[1] / u[0]) + fast_speed(u); }

  std::pair<double, double> wave_speed_range(const StateT& u) const {
    const double vx = u[1] / u[0];
    const double cf = fast_speed(u);
    return {vx - cf, vx + cf};
  }

  /// max{|vxL| + cfL, |vxR| + cfR, |vRoe| + max(cfL, cfR)} + |BL - BR| / (sqrt(rhoL) + sqrt(rhoR)).
  /// A signed vRoe underestimates the speed when both states move left fast
  /// enough, and the split state then loses positive pressure.
  double idp_pair_speed(const StateT& ul, const StateT& ur) const {
    const double cfl = fast_speed(ul), cfr = fast_speed(ur);
    const double sl = std::sqrt(ul[0]), sr = std::sqrt(ur[0]);
    const double vxl = ul[1] / ul[0], vxr = ur[1] / ur[0];
    const double v_roe = (sl * vxl + sr * vxr) / (sl + sr);
    const double db = std::hypot(ul[4] - ur[4], ul[5] - ur[5]);
    return std::max({std::abs(vxl) + cfl, std::abs(vxr) + cfr, std::abs(v_roe) + std::max(cfl, cfr)}) +
           db / (sl + sr);
  }

  bool in_domain(const StateT& u, const Floors& fl = {}) const {
    if (!u.allFinite() || !(u[0] > fl.rho)) return false;
    return raw_pressure(u) > fl.p;
  }

  StateT reflect_conserved(const StateT& u) const {
    StateT r = u;
    r[1] = -r[1];
    return r;
  }
  StateT reflect_transformed(const StateT& w) const {
    StateT r = w;
    r[1] = -r[1];
    return r;
  }

 private:
  double raw_pressure(const StateT& u) const {
    const double kinetic = 0.5 * (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]) / u[0];
    return (gamma_ - 1.0) * (u[6] - kinetic - magnetic_pressure(u));
  }

  double gamma_;
  double bx_;
  double rho_ref_;
};

static_assert(EquationSystem<ScalarLaw>);
static_assert(EquationSystem<Euler>);
static_assert(EquationSystem<Mhd>);

}  // namespace pampa

#endif  // PAMPA_SYSTEMS_HPP_
