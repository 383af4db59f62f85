#include "pampa/oracle.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace pampa {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t CounterRng::next_u64() {
  return splitmix64(seed_ * 0xD1B54A32D192ED03ULL + 0x9E3779B97F4A7C15ULL * counter_++);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

// ---------------------------------------------------------------------------

double oracle_margin(const ScalarLaw& sys, const State<1>& u) {
  if (!std::isfinite(u[0])) return -std::numeric_limits<double>::infinity();
  return std::min(u[0] - sys.lower(), sys.upper() - u[0]);
}

double oracle_pressure(const Euler& sys, const State<3>& u) {
  if (!u.allFinite() || !(u[0] > 0.0)) return -std::numeric_limits<double>::infinity();
  return (sys.gamma() - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
}

double oracle_pressure(const Mhd& sys, const State<7>& u) {
  if (!u.allFinite() || !(u[0] > 0.0)) return -std::numeric_limits<double>::infinity();
  const double kinetic = 0.5 * (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]) / u[0];
  const double magnetic = 0.5 * (sys.bx() * sys.bx() + u[4] * u[4] + u[5] * u[5]);
  return (sys.gamma() - 1.0) * (u[6] - kinetic - magnetic);
}

double oracle_margin(const Euler& sys, const State<3>& u) {
  if (!u.allFinite()) return -std::numeric_limits<double>::infinity();
  if (!(u[0] > 0.0)) return u[0];
  return std::min(u[0], oracle_pressure(sys, u));
}

double oracle_margin(const Mhd& sys, const State<7>& u) {
  if (!u.allFinite()) return -std::numeric_limits<double>::infinity();
  if (!(u[0] > 0.0)) return u[0];
  return std::min(u[0], oracle_pressure(sys, u));
}

std::string to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::average: return "average";
    case ValueKind::point: return "point";
    case ValueKind::midpoint: return "midpoint";
  }
  return "?";
}

std::string ViolationReport::summary() const {
  std::ostringstream os;
  os.precision(17);
  os << "checked " << checked << " values, " << total << " violations, worst margin "
     << worst_margin;
  for (const auto& v : violations) {
    os << "\n  step " << v.step << " stage " << v.stage << " " << to_string(v.kind) << " "
       << v.location << " margin " << v.margin << " state (";
    for (std::size_t k = 0; k < v.state.size(); ++k) os << (k ? ", " : "") << v.state[k];
    os << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

SplittingSystem parse_splitting_system(std::string_view name) {
  if (name == "burgers") return SplittingSystem::burgers;
  if (name == "euler") return SplittingSystem::euler;
  if (name == "mhd") return SplittingSystem::mhd;
  throw ConfigError("unknown splitting system '" + std::string(name) + "'");
}

namespace {

template <class Sys>
State<Sys::dim> split_state(const Sys& sys, const State<Sys::dim>& ul, const State<Sys::dim>& ur,
                            double lambda) {
  return 0.5 * (ul + ur) - (sys.flux(ur) - sys.flux(ul)) / (2.0 * lambda);
}

void record(SplittingResult& res, double margin, bool pass) {
  if (res.samples == 0 || margin < res.worst_margin) res.worst_margin = margin;
  ++res.samples;
  if (!pass) ++res.failures;
}

void record(SplittingResult& res, double margin) { record(res, margin, margin > 0.0); }

}  // namespace

SplittingResult sample_lf_splitting(SplittingSystem system, long long samples, std::uint64_t seed,
                                    double lambda_scale) {
  if (samples < 1) throw ConfigError("need at least one sample");
  if (!(lambda_scale > 0.0)) throw ConfigError("lambda scale must be positive");
  CounterRng rng(seed);
  SplittingResult res;

  switch (system) {
    case SplittingSystem::burgers: {
      const ScalarLaw sys(ScalarFlux::burgers, -1.0, 2.0);
      for (long long k = 0; k < samples; ++k) {
        const State<1> ul(rng.uniform(-1.0, 2.0));
        const State<1> ur(rng.uniform(-1.0, 2.0));
        const double lambda = lambda_scale * sys.idp_pair_speed(ul, ur);
        if (lambda == 0.0) {
          record(res, 1.0);
          continue;
        }
        const double s = split_state(sys, ul, ur, lambda)[0];
        const double lo = std::min(ul[0], ur[0]), hi = std::max(ul[0], ur[0]);
        const double margin = std::min(s - lo, hi - s) / std::max(hi - lo, 1e-300);
        record(res, margin, s >= lo && s <= hi);
      }
      break;
    }
    case SplittingSystem::euler: {
      const Euler sys(1.4);
      for (long long k = 0; k < samples; ++k) {
        const auto draw = [&] {
          const double rho = rng.log_uniform(1e-6, 1e3);
          const double v = rng.uniform(-100.0, 100.0);
          const double p = rng.log_uniform(1e-8, 1e6);
          return std::array<double, 3>{rho, v, p};
        };
        const auto l = draw();
        const auto r = draw();
        const State<3> ul = sys.from_primitive(l[0], l[1], l[2]);
        const State<3> ur = sys.from_primitive(r[0], r[1], r[2]);
        const double lambda = lambda_scale * sys.idp_pair_speed(ul, ur);
        const State<3> s = split_state(sys, ul, ur, lambda);
        const double rho = s[0];
        const double p = (sys.gamma() - 1.0) * (s[2] - 0.5 * s[1] * s[1] / rho);
        record(res, std::min(rho / std::max(l[0], r[0]), p / std::max(l[2], r[2])));
      }
      break;
    }
    case SplittingSystem::mhd: {
      constexpr double kVel = 100.0 / 1.7320508075688772;  // |v| <= 100
      for (long long k = 0; k < samples; ++k) {
        const Mhd sys(5.0 / 3.0, rng.uniform(-10.0, 10.0));
        const auto draw = [&] {
          State<7> v;
          v << rng.log_uniform(1e-6, 1e3), rng.uniform(-kVel, kVel), rng.uniform(-kVel, kVel),
              rng.uniform(-kVel, kVel), rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0),
              rng.log_uniform(1e-8, 1e6);
          return v;
        };
        const State<7> l = draw();
        const State<7> r = draw();
        const State<7> ul = sys.from_primitive(l);
        const State<7> ur = sys.from_primitive(r);
        const double lambda = lambda_scale * sys.idp_pair_speed(ul, ur);
        const State<7> s = split_state(sys, ul, ur, lambda);
        const double rho = s[0];
        const double kinetic = 0.5 * (s[1] * s[1] + s[2] * s[2] + s[3] * s[3]) / rho;
        const double magnetic = 0.5 * (sys.bx() * sys.bx() + s[4] * s[4] + s[5] * s[5]);
        const double p = (sys.gamma() - 1.0) * (s[6] - kinetic - magnetic);
        record(res, std::min(rho / std::max(l[0], r[0]), p / std::max(l[6], r[6])));
      }
      break;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------

Thm43Record thm43_counterexample(double eps, double courant) {
  if (!(eps > 0.0 && eps < 0.25)) throw ConfigError("eps must lie in (0, 1/4)");
  if (!(courant > 0.0 && courant <= kMaxCfl)) throw ConfigError("courant must lie in (0, 1/6]");
  Thm43Record rec;
  rec.eps = eps;
  rec.courant = courant;
  rec.average = 1.0 - 2.0 * eps / 3.0;
  rec.midpoint = midpoint_value(State<1>(rec.average), State<1>(1.0), State<1>(0.0))[0];
  rec.formula_value = rec.average + courant;

  // cells: 1, 1, target, 0, 0 ; nodes: 1, 1, 1, 0, 0, 0
  const ScalarLaw sys(ScalarFlux::advection, 0.0, 1.0);
  const Grid1D grid = build_uniform_grid(0.0, 5.0, 5);
  const double dt = courant * grid.dx(2);
  DofField<ScalarLaw> field;
  for (double a : {1.0, 1.0, rec.average, 0.0, 0.0}) field.averages.emplace_back(a);

  const auto advance = [&](bool idp) {
    SchemeOptions opt;
    opt.idp = idp;
    opt.point_variables = PointVariables::primitive;
    const Operator<ScalarLaw> op(sys, grid, BoundaryKind::outflow, opt);
    DofField<ScalarLaw> f = field;
    f.points.clear();
    for (double u : {1.0, 1.0, 1.0, 0.0, 0.0, 0.0}) f.points.push_back(op.node_variables(State<1>(u)));
    const StageResult<ScalarLaw> r = op.evaluate(f, dt);
    if (idp) rec.theta = r.cells[2].theta;
    return f.averages[2][0] + dt * r.rhs.averages[2][0];
  };
  rec.continuous_average = advance(false);
  rec.idp_average = advance(true);
  return rec;
}

}  // namespace pampa
