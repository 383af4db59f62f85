#ifndef PAMPA_STATE_HPP_
#define PAMPA_STATE_HPP_

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace pampa {

/// Fixed-size state vector. Used for conservative states U and for
/// transformed point variables W alike; the meaning comes from context.
template <int D>
using State = Eigen::Matrix<double, D, 1>;

template <int D>
using Matrix = Eigen::Matrix<double, D, D>;

/// Thrown when a state leaves the set where a formula is defined
/// (non-positive density, pressure, values outside scalar bounds).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an internal invariant that upstream code guarantees is broken.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Positivity floors for density and pressure. Scalar systems ignore them.
struct Floors {
  double rho = 0.0;
  double p = 0.0;
};

template <int D>
bool all_finite(const State<D>& u) {
  return u.allFinite();
}

template <int D>
State<D> lerp(const State<D>& a, const State<D>& b, double theta) {
  return (1.0 - theta) * a + theta * b;
}

/// Cell averages and nodal point values. Averages hold conservative states,
/// points hold transformed variables W = Psi(U).
template <class Sys>
struct DofField {
  using StateT = State<Sys::dim>;
  std::vector<StateT> averages;
  std::vector<StateT> points;
};

}  // namespace pampa

#endif  // PAMPA_STATE_HPP_
