#ifndef PAMPA_ORACLE_HPP_
#define PAMPA_ORACLE_HPP_

// Brute-force checkers used by the tests and the `verify` command. They
// recompute pressures and splitting states from raw conservative variables
// rather than going through the scheme's flux code.

#include "pampa/scheme.hpp"
#include "pampa/state.hpp"
#include "pampa/systems.hpp"
#include "pampa/timeint.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pampa {

// ---------------------------------------------------------------------------
// reproducible random numbers

/// Counter-based generator: draw k of stream `seed` is splitmix64(seed, k),
/// so any draw can be regenerated without replaying the stream.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
      : seed_(seed), counter_(counter) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// exp of a uniform draw on [ln lo, ln hi].
  double log_uniform(double lo, double hi);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

std::uint64_t splitmix64(std::uint64_t x);

// ---------------------------------------------------------------------------
// admissibility recomputed from raw variables

/// Distance to the boundary of G: min(u - lo, hi - u) for scalars,
/// min(rho, p) for Euler and MHD. Admissible iff the margin is >= 0 for
/// scalars (closed interval) and > 0 for the gas systems.
double oracle_margin(const ScalarLaw& sys, const State<1>& u);

/// Raw pressure formula; -inf for non-finite states or rho <= 0.
double oracle_pressure(const Euler& sys, const State<3>& u);
double oracle_pressure(const Mhd& sys, const State<7>& u);

double oracle_margin(const Euler& sys, const State<3>& u);
double oracle_margin(const Mhd& sys, const State<7>& u);

template <class Sys>
bool oracle_admissible(const Sys& sys, const State<Sys::dim>& u) {
  const double m = oracle_margin(sys, u);
  if constexpr (Sys::dim == 1) {
    return m >= 0.0;
  } else {
    return m > 0.0;
  }
}

// ---------------------------------------------------------------------------
// domain sweep over a run

enum class ValueKind { average, point, midpoint };
std::string to_string(ValueKind kind);

struct Violation {
  int step = 0;
  int stage = 0;  // -1 for the final field
  int location = 0;
  ValueKind kind = ValueKind::average;
  std::vector<double> state;
  double margin = 0.0;
};

struct ViolationReport {
  std::vector<Violation> violations;  // the first `kMaxStored` in visiting order
  long long total = 0;
  long long checked = 0;
  double worst_margin = 0.0;  // smallest margin seen among all checked values
  static constexpr std::size_t kMaxStored = 64;

  bool empty() const { return total == 0; }
  std::string summary() const;
};

/// Stage observer that checks every average, node value and limited
/// midpoint of every stage against G.
template <class Sys>
class DomainSweep {
 public:
  explicit DomainSweep(const Operator<Sys>& op) : op_(op) {}

  void operator()(const StageView<Sys>& view) {
    check_field(view.field, view.step, view.stage);
    const auto& cells = view.result.cells;
    for (std::size_t c = 0; c < cells.size(); ++c)
      check(cells[c].mid, view.step, view.stage, static_cast<int>(c), ValueKind::midpoint);
  }

  void check_field(const DofField<Sys>& field, int step, int stage) {
    for (std::size_t c = 0; c < field.averages.size(); ++c)
      check(field.averages[c], step, stage, static_cast<int>(c), ValueKind::average);
    for (std::size_t j = 0; j < field.points.size(); ++j)
      check(op_.node_state(field.points[j]), step, stage, static_cast<int>(j), ValueKind::point);
  }

  const ViolationReport& report() const { return report_; }

 private:
  void check(const State<Sys::dim>& u, int step, int stage, int loc, ValueKind kind) {
    const double m = oracle_margin(op_.system(), u);
    if (report_.checked == 0 || m < report_.worst_margin) report_.worst_margin = m;
    ++report_.checked;
    if (oracle_admissible(op_.system(), u)) return;
    ++report_.total;
    if (report_.violations.size() < ViolationReport::kMaxStored)
      report_.violations.push_back(
          Violation{step, stage, loc, kind, std::vector<double>(u.data(), u.data() + u.size()), m});
  }

  const Operator<Sys>& op_;
  ViolationReport report_;
};

// ---------------------------------------------------------------------------
// generalized Lax-Friedrichs splitting

enum class SplittingSystem { burgers, euler, mhd };
SplittingSystem parse_splitting_system(std::string_view name);

struct SplittingResult {
  long long samples = 0;
  long long failures = 0;
  double worst_margin = 0.0;  // smallest normalised margin; negative means a failure
  bool passed() const { return failures == 0; }
};

/// Draws `samples` pairs from G and checks that
///   (U_L + U_R)/2 - (F(U_R) - F(U_L)) / (2 lambda),  lambda = scale * idp_pair_speed,
/// is admissible. Burgers pairs come from [-1, 2] and must land between u_L
/// and u_R. Euler: rho in [1e-6, 1e3] and p in [1e-8, 1e6] log-uniform, |v| <= 100.
/// MHD adds uniform B_y, B_z in [-10, 10] and a per-pair B_x in [-10, 10],
/// gamma 5/3. Margins are min(rho, p) of the split state divided by the
/// larger of the pair's values.
SplittingResult sample_lf_splitting(SplittingSystem system, long long samples, std::uint64_t seed,
                                    double lambda_scale = 1.0);

// ---------------------------------------------------------------------------
// single-cell counterexample for the continuous flux

struct Thm43Record {
  double eps = 0.0;
  double courant = 1.0 / 6.0;
  double average = 0.0;             // 1 - 2 eps / 3
  double midpoint = 0.0;            // 5/4 - eps
  double theta = 1.0;               // scaling factor the limiter picks
  double continuous_average = 0.0;  // after one continuous-flux step
  double idp_average = 0.0;         // after one IDP-flux step
  double formula_value = 0.0;       // 1 - 2 eps / 3 + courant
};

/// Advection on G = [0, 1]: a cell with average 1 - 2 eps/3 and endpoint
/// values 1 and 0 between a constant-1 and a constant-0 neighbor. One
/// forward-Euler step at dt/dx = courant with the plain and the IDP scheme.
Thm43Record thm43_counterexample(double eps, double courant = 1.0 / 6.0);

}  // namespace pampa

#endif  // PAMPA_ORACLE_HPP_
