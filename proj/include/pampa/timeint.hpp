#ifndef PAMPA_TIMEINT_HPP_
#define PAMPA_TIMEINT_HPP_

#include "pampa/scheme.hpp"
#include "pampa/state.hpp"

#include <deque>
#include <functional>
#include <string>
#include <string_view>

namespace pampa {

enum class IntegratorKind { forward_euler, ssp_rk3, ssp_ms3 };

IntegratorKind parse_integrator(std::string_view name);
std::string to_string(IntegratorKind kind);

/// a + c * b, componentwise over averages and points.
template <class Sys>
DofField<Sys> axpy(const DofField<Sys>& a, double c, const DofField<Sys>& b) {
  DofField<Sys> out = a;
  for (std::size_t k = 0; k < out.averages.size(); ++k) out.averages[k] += c * b.averages[k];
  for (std::size_t k = 0; k < out.points.size(); ++k) out.points[k] += c * b.points[k];
  return out;
}

/// ca * a + cb * b.
template <class Sys>
DofField<Sys> blend(double ca, const DofField<Sys>& a, double cb, const DofField<Sys>& b) {
  DofField<Sys> out = a;
  for (std::size_t k = 0; k < out.averages.size(); ++k)
    out.averages[k] = ca * a.averages[k] + cb * b.averages[k];
  for (std::size_t k = 0; k < out.points.size(); ++k)
    out.points[k] = ca * a.points[k] + cb * b.points[k];
  return out;
}

/// What an observer sees for every residual evaluation: the stage input and
/// the limited triples built from it.
template <class Sys>
struct StageView {
  int step = 0;
  int stage = 0;
  double time = 0.0;
  const DofField<Sys>& field;
  const StageResult<Sys>& result;
};

template <class Sys>
using StageObserver = std::function<void(const StageView<Sys>&)>;

struct StepReport {
  int step = 0;
  double time = 0.0;  // after the step
  double dt = 0.0;
  int retries = 0;
  bool multistep = false;
  int idp_active = 0;          // summed over stages
  int oscillation_active = 0;  // summed over stages
  double max_courant = 0.0;    // largest lambda dt / dx seen by a forward-Euler substep
};

/// Advances a DofField with SSP schemes built from forward-Euler substeps.
///
/// Every substep of size h with residual Courant rate r is checked against
/// r h <= 1/6; a failing step is retried with half the time step.
/// ssp_ms3 runs on a fixed dt: three RK3 steps fill the history, a smaller
/// admissible dt restarts it, and a short final step falls back to RK3.
template <class Sys>
class Integrator {
 public:
  Integrator(const Operator<Sys>& op, IntegratorKind kind) : op_(op), kind_(kind) {}

  IntegratorKind kind() const { return kind_; }
  void set_observer(StageObserver<Sys> obs) { observer_ = std::move(obs); }

  /// Time-step scale for the configured method (1/3 for the multistep scheme).
  double cfl_scale() const { return kind_ == IntegratorKind::ssp_ms3 ? 1.0 / 3.0 : 1.0; }

  /// One step. `dt_candidate` comes from compute_dt with cfl_scale() applied,
  /// `remaining` is the time left to the final time. `field` is replaced.
  StepReport step(DofField<Sys>& field, double time, double dt_candidate, double remaining) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 40) throw InvariantViolation("time step collapsed while honouring CFL 1/6");
      StepReport rep;
      rep.step = steps_;
      rep.retries = attempt;
      DofField<Sys> next;
      double dt = std::min(dt_candidate, remaining);
      bool ok = false;
      if (kind_ == IntegratorKind::ssp_ms3) {
        if (ms_dt_ == 0.0 || dt_candidate < ms_dt_) {
          history_.clear();
          ms_dt_ = dt_candidate;
        }
        if (remaining <= ms_dt_) {
          dt = remaining;
          ok = rk3(field, time, dt, next, rep, false);
        } else if (history_.size() == 3) {
          dt = ms_dt_;
          ok = multistep(field, time, dt, next, rep);
        } else {
          dt = ms_dt_;
          ok = rk3(field, time, dt, next, rep, true);
        }
      } else if (kind_ == IntegratorKind::ssp_rk3) {
        ok = rk3(field, time, dt, next, rep, false);
      } else {
        ok = euler(field, time, dt, next, rep);
      }
      if (ok) {
        field = std::move(next);
        rep.dt = dt;
        rep.time = time + dt;
        ++steps_;
        return rep;
      }
      history_.clear();
      ms_dt_ = 0.0;
      dt_candidate = 0.5 * dt;
    }
  }

  /// Step size actually taken by the multistep scheme, 0 before the first step.
  double multistep_dt() const { return ms_dt_; }

 private:
  struct History {
    DofField<Sys> field;
    DofField<Sys> rhs;
    double rate;
  };

  StageResult<Sys> eval(const DofField<Sys>& u, int stage, double time, double dt,
                        StepReport& rep) const {
    StageResult<Sys> r = op_.evaluate(u, dt);
    if (observer_) observer_(StageView<Sys>{steps_, stage, time, u, r});
    rep.idp_active += r.idp_active;
    rep.oscillation_active += r.oscillation_active;
    return r;
  }

  static bool admissible(double rate, double h, StepReport& rep) {
    const double courant = rate * h;
    rep.max_courant = std::max(rep.max_courant, courant);
    return courant <= kMaxCfl;
  }

  bool euler(const DofField<Sys>& u, double time, double dt, DofField<Sys>& out,
             StepReport& rep) const {
    const StageResult<Sys> r = eval(u, 0, time, dt, rep);
    if (!admissible(r.courant_rate, dt, rep)) return false;
    out = axpy(u, dt, r.rhs);
    return true;
  }

  bool rk3(const DofField<Sys>& u, double time, double dt, DofField<Sys>& out, StepReport& rep,
           bool record) {
    const StageResult<Sys> r0 = eval(u, 0, time, dt, rep);
    if (!admissible(r0.courant_rate, dt, rep)) return false;
    const DofField<Sys> u1 = axpy(u, dt, r0.rhs);
    const StageResult<Sys> r1 = eval(u1, 1, time + dt, dt, rep);
    if (!admissible(r1.courant_rate, dt, rep)) return false;
    const DofField<Sys> u2 = blend(0.75, u, 0.25, axpy(u1, dt, r1.rhs));
    const StageResult<Sys> r2 = eval(u2, 2, time + 0.5 * dt, dt, rep);
    if (!admissible(r2.courant_rate, dt, rep)) return false;
    out = blend(1.0 / 3.0, u, 2.0 / 3.0, axpy(u2, dt, r2.rhs));
    if (record) push(u, r0);
    return true;
  }

  // u^{n+1} = 16/27 (u^n + 3 dt L(u^n)) + 11/27 (u^{n-3} + 12/11 dt L(u^{n-3}))
  bool multistep(const DofField<Sys>& u, double time, double dt, DofField<Sys>& out,
                 StepReport& rep) {
    rep.multistep = true;
    const StageResult<Sys> r = eval(u, 0, time, dt, rep);
    const History& old = history_.front();
    if (!admissible(r.courant_rate, 3.0 * dt, rep)) return false;
    if (!admissible(old.rate, 12.0 / 11.0 * dt, rep)) return false;
    out = blend(16.0 / 27.0, axpy(u, 3.0 * dt, r.rhs), 11.0 / 27.0,
                axpy(old.field, 12.0 / 11.0 * dt, old.rhs));
    push(u, r);
    return true;
  }

  void push(const DofField<Sys>& u, const StageResult<Sys>& r) {
    history_.push_back(History{u, r.rhs, r.courant_rate});
    while (history_.size() > 3) history_.pop_front();
  }

  const Operator<Sys>& op_;
  IntegratorKind kind_;
  StageObserver<Sys> observer_;
  std::deque<History> history_;  // u^{n-3}, u^{n-2}, u^{n-1} before the current step
  double ms_dt_ = 0.0;
  int steps_ = 0;
};

}  // namespace pampa

#endif  // PAMPA_TIMEINT_HPP_
