#include "pampa/oracle.hpp"
#include "pampa/transform.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace pampa;

TEST_CASE("Euler transform values") {
  const Euler e(1.4);
  const State<3> w = to_transformed(e, e.from_primitive(1.0, 0.0, 1.0));
  CHECK(w[0] == doctest::Approx(0.54132485461291810).epsilon(1e-15));  // ln(e - 1)
  CHECK(w[1] == 0.0);
  CHECK(w[2] == 0.0);
  const State<3> u = from_transformed(e, State<3>(0.0, 0.0, 0.0));
  CHECK(u[0] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const Euler e2(1.4, 2.5);
  CHECK(from_transformed(e2, State<3>(0.0, 0.0, 0.0))[0] ==
        doctest::Approx(2.5 * std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("scalar clipped map") {
  const ScalarLaw s(ScalarFlux::advection, 0.0, 1.0);
  CHECK(to_transformed(s, State<1>(0.5))[0] == 0.5);
  CHECK(from_transformed(s, State<1>(-3.0))[0] == 0.0);
  CHECK(from_transformed(s, State<1>(2.0))[0] == 1.0);
  const ScalarLaw b(ScalarFlux::burgers, -1.0, 2.0);
  CHECK(to_transformed(b, State<1>(2.0))[0] == 1.0);
  CHECK(to_transformed(b, State<1>(-1.0))[0] == 0.0);
  CHECK(from_transformed(b, State<1>(0.5))[0] == 0.5);
  CHECK_THROWS_AS(to_transformed(b, State<1>(2.5)), DomainError);
}

TEST_CASE("transform rejects states outside G") {
  const Euler e(1.4);
  CHECK_THROWS_AS(to_transformed(e, State<3>(1.0, 1.0, 0.5)), DomainError);
  CHECK_THROWS_AS(to_transformed(e, State<3>(-1.0, 0.0, 1.0)), DomainError);
}

TEST_CASE("softplus pair is stable for large arguments") {
  CHECK(softplus(800.0) == 800.0);
  CHECK(softplus_inverse(800.0) == 800.0);
  CHECK(softplus(-40.0) > 0.0);
  CHECK(softplus(-40.0) == doctest::Approx(std::exp(-40.0)).epsilon(1e-12));
  for (double x : {1e-8, 0.3, 1.0, 29.0, 31.0, 100.0})
    CHECK(softplus(softplus_inverse(x)) == doctest::Approx(x).epsilon(1e-14));
}

TEST_CASE("advection Jacobian is the speed") {
  const ScalarLaw s(ScalarFlux::advection, 0.0, 1.0, 1.0);
  for (double u : {0.0, 0.3, 1.0}) CHECK(jacobian_transformed(s, State<1>(u))(0, 0) == 1.0);
  const ScalarLaw b(ScalarFlux::burgers, -1.0, 2.0);
  CHECK(jacobian_transformed(b, State<1>(1.5))(0, 0) == 1.5);
}

TEST_CASE("Euler Jacobian at rest has the printed sparsity") {
  const Euler e(1.4);
  const Matrix<3> j = jacobian_transformed(e, e.from_primitive(0.7, 0.0, 2.0));
  for (int i = 0; i < 3; ++i) CHECK(j(i, i) == 0.0);
  CHECK(j(0, 1) != 0.0);
  CHECK(j(1, 0) != 0.0);
  CHECK(j(1, 2) != 0.0);
  CHECK(j(0, 2) == 0.0);
  CHECK(j(2, 0) == 0.0);
  CHECK(j(2, 1) == 0.0);
  CHECK(j(1, 2) == doctest::Approx(2.0 / 0.7));
}

namespace {

template <int D>
std::vector<double> sorted_real_eigenvalues(const Matrix<D>& m, double* max_imag = nullptr) {
  Eigen::EigenSolver<Matrix<D>> es(m, false);
  std::vector<double> out;
  double im = 0.0;
  for (int i = 0; i < D; ++i) {
    out.push_back(es.eigenvalues()[i].real());
    im = std::max(im, std::abs(es.eigenvalues()[i].imag()));
  }
  if (max_imag) *max_imag = im;
  std::sort(out.begin(), out.end());
  return out;
}

template <class Sys>
Matrix<Sys::dim> flux_jacobian_fd(const Sys& sys, const State<Sys::dim>& u) {
  Matrix<Sys::dim> j;
  for (int k = 0; k < Sys::dim; ++k) {
    const double h = 1e-6 * std::max(std::abs(u[k]), 1e-3);
    State<Sys::dim> up = u, um = u;
    up[k] += h;
    um[k] -= h;
    j.col(k) = (sys.flux(up) - sys.flux(um)) / (2.0 * h);
  }
  return j;
}

}  // namespace

TEST_CASE("Euler Jacobian eigenvalues are v - c, v, v + c") {
  const Euler e(1.4);
  CounterRng rng(3);
  for (int k = 0; k < 1000; ++k) {
    const double rho = rng.log_uniform(1e-3, 1e3), v = rng.uniform(-5.0, 5.0);
    const double p = rng.log_uniform(1e-3, 1e3);
    const State<3> u = e.from_primitive(rho, v, p);
    const double c = std::sqrt(1.4 * p / rho);
    double im = 0.0;
    const auto ev = sorted_real_eigenvalues<3>(jacobian_transformed(e, u), &im);
    const double scale = std::abs(v) + c;
    CHECK(im <= 1e-8 * scale);
    CHECK(std::abs(ev[0] - (v - c)) <= 1e-8 * scale);
    CHECK(std::abs(ev[1] - v) <= 1e-8 * scale);
    CHECK(std::abs(ev[2] - (v + c)) <= 1e-8 * scale);
  }
}

TEST_CASE("property: W Jacobian is similar to the conservative flux Jacobian") {
  CounterRng rng(19);
  SUBCASE("Euler") {
    const Euler e(1.4);
    for (int k = 0; k < 1000; ++k) {
      const State<3> u = e.from_primitive(rng.log_uniform(0.1, 10.0), rng.uniform(-3.0, 3.0),
                                          rng.log_uniform(0.1, 10.0));
      const auto a = sorted_real_eigenvalues<3>(jacobian_transformed(e, u));
      const auto b = sorted_real_eigenvalues<3>(flux_jacobian_fd(e, u));
      const double scale = e.max_wave_speed(u);
      for (int i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-5 * scale);
    }
  }
  SUBCASE("MHD") {
    for (int k = 0; k < 1000; ++k) {
      const Mhd m(5.0 / 3.0, rng.uniform(-2.0, 2.0));
      State<7> prim;
      prim << rng.log_uniform(0.1, 10.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0),
          rng.uniform(-3.0, 3.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
          rng.log_uniform(0.1, 10.0);
      const State<7> u = m.from_primitive(prim);
      const auto a = sorted_real_eigenvalues<7>(jacobian_transformed(m, u));
      const auto b = sorted_real_eigenvalues<7>(flux_jacobian_fd(m, u));
      const double scale = m.max_wave_speed(u);
      // the largest and smallest eigenvalues are simple (fast waves)
      CHECK(std::abs(a.front() - b.front()) <= 1e-5 * scale);
      CHECK(std::abs(a.back() - b.back()) <= 1e-5 * scale);
      CHECK(std::abs(a.back() - (prim[1] + m.fast_speed(u))) <= 1e-8 * scale);
      CHECK(std::abs(a.front() - (prim[1] - m.fast_speed(u))) <= 1e-8 * scale);
      double sa = 0.0, sb = 0.0;
      for (int i = 0; i < 7; ++i) {
        sa += a[i];
        sb += b[i];
      }
      CHECK(std::abs(sa - sb) <= 1e-5 * scale);  // trace
    }
  }
}

TEST_CASE("property: every finite W maps into G") {
  CounterRng rng(42);
  const Euler e(1.4);
  long long bad = 0;
  for (int k = 0; k < 1000000; ++k) {
    const State<3> w(rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0));
    const State<3> u = from_transformed(e, w);
    if (!e.in_domain(u) || !(u[0] > 0.0) || !(oracle_pressure(e, u) > 0.0)) ++bad;
  }
  CHECK(bad == 0);

  bad = 0;
  for (int block = 0; block < 1000; ++block) {
    const Mhd m(5.0 / 3.0, rng.uniform(-10.0, 10.0));
    for (int k = 0; k < 1000; ++k) {
      State<7> w;
      for (int i = 0; i < 7; ++i) w[i] = rng.uniform(-50.0, 50.0);
      const State<7> u = from_transformed(m, w);
      if (!m.in_domain(u) || !(u[0] > 0.0) || !(oracle_pressure(m, u) > 0.0)) ++bad;
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("property: round trip U -> W -> U") {
  CounterRng rng(43);
  const Euler e(1.4);
  double worst = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const double rho = rng.log_uniform(1e-6, 1e6), p = rng.log_uniform(1e-6, 1e6);
    const double v = rng.uniform(-10.0, 10.0) * std::sqrt(1.4 * p / rho);
    const State<3> back = e.to_primitive(from_transformed(e, to_transformed(e, e.from_primitive(rho, v, p))));
    worst = std::max({worst, std::abs(back[0] - rho) / rho, std::abs(back[2] - p) / p,
                      std::abs(back[1] - v) / std::max(std::abs(v), 1e-300)});
  }
  CHECK(worst <= 1e-11);

  worst = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const double rho = rng.log_uniform(1e-6, 1e6), p = rng.log_uniform(1e-6, 1e6);
    const double c = std::sqrt(5.0 / 3.0 * p / rho), b = std::sqrt(p);
    const Mhd m(5.0 / 3.0, rng.uniform(-10.0, 10.0) * b, rng.log_uniform(0.1, 10.0));
    State<7> prim;
    prim << rho, rng.uniform(-10.0, 10.0) * c, rng.uniform(-10.0, 10.0) * c,
        rng.uniform(-10.0, 10.0) * c, rng.uniform(-10.0, 10.0) * b, rng.uniform(-10.0, 10.0) * b, p;
    const State<7> back = m.to_primitive(from_transformed(m, to_transformed(m, m.from_primitive(prim))));
    for (int i = 0; i < 7; ++i)
      worst = std::max(worst, std::abs(back[i] - prim[i]) / std::max(std::abs(prim[i]), 1e-300));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("property: scalar map is idempotent on [0, 1]") {
  const ScalarLaw s(ScalarFlux::burgers, -1.0, 2.0);
  CounterRng rng(9);
  for (int k = 0; k < 10000; ++k) {
    const double w = rng.uniform(-5.0, 5.0);
    const double back = to_transformed(s, from_transformed(s, State<1>(w)))[0];
    CHECK(back == doctest::Approx(std::clamp(w, 0.0, 1.0)).epsilon(1e-15));
  }
}

TEST_CASE("primitive point variables are a plain pass-through") {
  const Euler e(1.4);
  const State<3> u = e.from_primitive(2.0, -0.5, 3.0);
  const State<3> w = to_transformed(e, u, PointVariables::primitive);
  CHECK(w[0] == 2.0);
  CHECK(w[2] == doctest::Approx(3.0));
  CHECK((from_transformed(e, w, PointVariables::primitive) - u).norm() < 1e-14);
  CHECK(parse_point_variables("primitive") == PointVariables::primitive);
}
