#include "pampa/verify.hpp"

#include "pampa/driver.hpp"
#include "pampa/limiters.hpp"
#include "pampa/oracle.hpp"
#include "pampa/transform.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace pampa {

namespace {

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

template <class Sys>
TransformDomainCheck domain_check(const Sys& sys, long long samples, CounterRng& rng, double range) {
  TransformDomainCheck out;
  out.min_density = out.min_pressure = std::numeric_limits<double>::infinity();
  for (long long k = 0; k < samples; ++k) {
    State<Sys::dim> w;
    for (int i = 0; i < Sys::dim; ++i) w[i] = rng.uniform(-range, range);
    const State<Sys::dim> u = from_transformed(sys, w);
    const double p = oracle_pressure(sys, u);
    out.min_density = std::min(out.min_density, u[0]);
    out.min_pressure = std::min(out.min_pressure, p);
    if (!sys.in_domain(u) || !oracle_admissible(sys, u)) ++out.failures;
    ++out.samples;
  }
  return out;
}

State<3> random_euler(const Euler& sys, CounterRng& rng) {
  const double rho = rng.log_uniform(1e-6, 1e6);
  const double p = rng.log_uniform(1e-6, 1e6);
  const double v = rng.uniform(-10.0, 10.0) * std::sqrt(sys.gamma() * p / rho);
  return State<3>(rho, v, p);
}

State<7> random_mhd(const Mhd& sys, double rho, double p, CounterRng& rng) {
  State<7> v;
  const double c = std::sqrt(sys.gamma() * p / rho);
  v << rho, rng.uniform(-10.0, 10.0) * c, rng.uniform(-10.0, 10.0) * c,
      rng.uniform(-10.0, 10.0) * c, rng.uniform(-10.0, 10.0) * std::sqrt(p),
      rng.uniform(-10.0, 10.0) * std::sqrt(p), p;
  return v;
}

template <class Sys>
double round_trip_error(const Sys& sys, const State<Sys::dim>& prim) {
  const State<Sys::dim> u = sys.from_primitive(prim);
  const State<Sys::dim> back = from_transformed(sys, to_transformed(sys, u));
  const State<Sys::dim> a = sys.to_primitive(u);
  const State<Sys::dim> b = sys.to_primitive(back);
  double err = 0.0;
  for (int i = 0; i < Sys::dim; ++i) err = std::max(err, rel(a[i], b[i]));
  return err;
}

template <int D>
double cad_error(const LimitedTriple<D>& t, const State<D>& avg) {
  double err = 0.0;
  const State<D> recon = (t.left + 4.0 * t.mid + t.right) / 6.0;
  for (int i = 0; i < D; ++i) {
    const double scale =
        std::max(std::abs(avg[i]), (std::abs(t.left[i]) + 4.0 * std::abs(t.mid[i]) + std::abs(t.right[i])) / 6.0);
    if (scale > 0.0) err = std::max(err, std::abs(recon[i] - avg[i]) / scale);
  }
  return err;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

TransformDomainCheck check_transform_domain(SystemKind kind, long long samples, std::uint64_t seed,
                                            double range) {
  CounterRng rng(seed);
  if (kind == SystemKind::euler) return domain_check(Euler(1.4), samples, rng, range);
  if (kind == SystemKind::mhd) {
    // a fresh B_x for every block of 1000 samples
    TransformDomainCheck total;
    total.min_density = total.min_pressure = std::numeric_limits<double>::infinity();
    for (long long done = 0; done < samples;) {
      const long long n = std::min<long long>(1000, samples - done);
      const TransformDomainCheck c = domain_check(Mhd(5.0 / 3.0, rng.uniform(-10.0, 10.0)), n, rng, range);
      total.samples += c.samples;
      total.failures += c.failures;
      total.min_density = std::min(total.min_density, c.min_density);
      total.min_pressure = std::min(total.min_pressure, c.min_pressure);
      done += n;
    }
    return total;
  }
  throw ConfigError("transform domain check needs euler or mhd");
}

RoundTripCheck check_round_trip(SystemKind kind, long long samples, std::uint64_t seed) {
  CounterRng rng(seed);
  RoundTripCheck out;
  for (long long k = 0; k < samples; ++k) {
    double err = 0.0;
    if (kind == SystemKind::euler) {
      const Euler sys(1.4, rng.log_uniform(0.1, 10.0));
      err = round_trip_error(sys, random_euler(sys, rng));
    } else if (kind == SystemKind::mhd) {
      const double rho_ref = rng.log_uniform(0.1, 10.0);
      const double rho = rng.log_uniform(1e-6, 1e6);
      const double p = rng.log_uniform(1e-6, 1e6);
      const Mhd sys(5.0 / 3.0, rng.uniform(-10.0, 10.0) * std::sqrt(p), rho_ref);
      err = round_trip_error(sys, random_mhd(sys, rho, p, rng));
    } else {
      const ScalarLaw sys(ScalarFlux::burgers, -1.0, 2.0);
      const State<1> u(rng.uniform(-1.0, 2.0));
      err = std::abs(from_transformed(sys, to_transformed(sys, u))[0] - u[0]) / 2.0;
    }
    out.max_relative_error = std::max(out.max_relative_error, err);
    ++out.samples;
  }
  return out;
}

CadCheck check_cad(SystemKind kind, long long samples, std::uint64_t seed) {
  CounterRng rng(seed);
  CadCheck out;
  for (long long k = 0; k < samples; ++k) {
    if (kind == SystemKind::euler) {
      const Euler sys(1.4);
      const State<3> avg = sys.from_primitive(random_euler(sys, rng));
      const State<3> l = sys.from_primitive(random_euler(sys, rng));
      const State<3> r = sys.from_primitive(random_euler(sys, rng));
      const Floors fl{std::min(1e-13, avg[0]), std::min(1e-13, sys.pressure(avg))};
      const auto t = idp_limit(sys, avg, l, midpoint_value(avg, l, r), r, fl);
      out.max_relative_error = std::max(out.max_relative_error, cad_error(t, avg));
      if (!oracle_admissible(sys, t.left) || !oracle_admissible(sys, t.mid) ||
          !oracle_admissible(sys, t.right))
        ++out.out_of_domain;
    } else if (kind == SystemKind::advection || kind == SystemKind::burgers) {
      const double lo = rng.uniform(-2.0, 1.0);
      const double hi = lo + rng.log_uniform(1e-3, 10.0);
      const ScalarLaw sys(ScalarFlux::burgers, lo, hi);
      const State<1> avg(rng.uniform(lo, hi));
      const State<1> l(rng.uniform(lo, hi));
      const State<1> r(rng.uniform(lo, hi));
      const auto t = idp_limit(sys, avg, l, midpoint_value(avg, l, r), r, Floors{});
      out.max_relative_error = std::max(out.max_relative_error, cad_error(t, avg));
      if (!oracle_admissible(sys, t.left) || !oracle_admissible(sys, t.mid) ||
          !oracle_admissible(sys, t.right))
        ++out.out_of_domain;
    } else {
      throw ConfigError("CAD check needs a scalar law or euler");
    }
    ++out.samples;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> verify_suites() {
  return {"splitting", "thm43", "sweep", "transform", "limiter"};
}

std::vector<SuiteResult> verify(const std::string& suite, const VerifyOptions& opt) {
  using Clock = std::chrono::steady_clock;
  std::vector<SuiteResult> out;
  const auto timed = [&](const std::string& name, auto&& body) {
    const auto t0 = Clock::now();
    SuiteResult r;
    r.name = name;
    try {
      body(r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (opt.log) opt.log(std::string(r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail);
    out.push_back(std::move(r));
  };

  const bool all = suite == "all";
  bool known = all;

  if (all || suite == "splitting") {
    known = true;
    std::vector<std::string> systems;
    if (opt.system == "all") {
      systems = {"burgers", "euler", "mhd"};
    } else {
      systems = {opt.system};
    }
    for (const auto& name : systems) {
      timed("splitting/" + name, [&](SuiteResult& r) {
        const SplittingResult s =
            sample_lf_splitting(parse_splitting_system(name), opt.samples, opt.seed);
        r.passed = s.passed();
        r.detail = std::to_string(s.samples) + " pairs, " + std::to_string(s.failures) +
                   " failures, worst margin " + fmt(s.worst_margin);
      });
    }
  }
  if (all || suite == "thm43") {
    known = true;
    timed("thm43", [&](SuiteResult& r) {
      const Thm43Record t = thm43_counterexample(opt.eps);
      const bool cont_matches = std::abs(t.continuous_average - t.formula_value) <= 1e-12;
      const bool idp_in = t.idp_average >= 0.0 && t.idp_average <= 1.0;
      r.passed = cont_matches && t.continuous_average > 1.0 && idp_in;
      std::ostringstream os;
      os.precision(17);
      os << "eps " << t.eps << ": continuous flux " << t.continuous_average << " (expected "
         << t.formula_value << ", above 1), IDP flux " << t.idp_average << " with theta "
         << t.theta;
      r.detail = os.str();
    });
  }
  if (all || suite == "sweep") {
    known = true;
    const std::vector<std::string> presets =
        opt.presets.empty() ? std::vector<std::string>{"jiang_shu", "burgers"} : opt.presets;
    for (const auto& name : presets) {
      timed("sweep/" + name, [&](SuiteResult& r) {
        RunOptions ro;
        ro.write_files = false;
        ro.seed = opt.seed;
        const RunSummary s = run(resolve_config(name), ro);
        r.passed = s.completed && s.sweep.empty();
        r.detail = s.sweep.summary() + (s.abort_reason.empty() ? "" : ", " + s.abort_reason);
      });
    }
  }
  if (all || suite == "transform") {
    known = true;
    for (SystemKind k : {SystemKind::euler, SystemKind::mhd}) {
      timed("transform/" + to_string(k), [&](SuiteResult& r) {
        const auto d = check_transform_domain(k, opt.samples * 10, opt.seed);
        const auto rt = check_round_trip(k, opt.samples, opt.seed + 1);
        r.passed = d.failures == 0 && rt.max_relative_error <= 1e-11;
        r.detail = std::to_string(d.samples) + " W samples, " + std::to_string(d.failures) +
                   " outside G, min rho " + fmt(d.min_density) + ", min p " +
                   fmt(d.min_pressure) + "; " + std::to_string(rt.samples) +
                   " round trips, max error " + fmt(rt.max_relative_error);
      });
    }
  }
  if (all || suite == "limiter") {
    known = true;
    for (SystemKind k : {SystemKind::burgers, SystemKind::euler}) {
      timed("limiter/" + std::string(k == SystemKind::euler ? "euler" : "scalar"),
            [&](SuiteResult& r) {
              const CadCheck c = check_cad(k, opt.samples, opt.seed);
              r.passed = c.out_of_domain == 0 && c.max_relative_error <= 1e-12;
              r.detail = std::to_string(c.samples) + " calls, " +
                         std::to_string(c.out_of_domain) + " outside G, max CAD error " +
                         fmt(c.max_relative_error);
            });
    }
  }
  if (!known) throw ConfigError("unknown verify suite '" + suite + "'");
  return out;
}

}  // namespace pampa
