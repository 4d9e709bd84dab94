#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lagsg/characteristics.hpp"
#include "lagsg/error.hpp"

using namespace lagsg;

namespace {

const MetricField& fold_field() {
  static const MetricField f(fold_example());
  return f;
}

// Hand-integrated light-like geodesics of 2(-Z dx^2 + dy^2 - Z dZ^2) with x'Z = C1, y' = C2:
// dx/dZ = C1 / R, dy/dZ = C2 Z / R, R = sqrt(C2^2 Z - C1^2), taken for Z' > 0.
struct Oracle {
  double C1, C2;
  double R(double Z) const { return std::sqrt(C2 * C2 * Z - C1 * C1); }
  double x(double Z) const { return 2 * C1 * R(Z) / (C2 * C2); }
  double y(double Z) const { return 2 * R(Z) * (2 * C1 * C1 + C2 * C2 * Z) / (3 * C2 * C2 * C2); }
};

double least_squares_slope(const std::vector<double>& u, const std::vector<double>& v) {
  double mu = 0, mv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= u.size();
  mv /= v.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    num += (u[i] - mu) * (v[i] - mv);
    den += (u[i] - mu) * (u[i] - mu);
  }
  return num / den;
}

}  // namespace

TEST_CASE("hamiltonian examples") {
  CHECK(hamiltonian(fold_field(), {{0, 0, 1}, {0, 1, 1}, 0}) == 0.0);
  CHECK(hamiltonian(fold_field(), {{0, 0, 1}, {1, 0, 0}, 0}) == -0.5);
  CHECK(hamiltonian(fold_field(), {{0.3, 2, -0.7}, {0.1, -0.2, 0.3}, 0}) > 0.0);
  CHECK_THROWS_AS(hamiltonian(fold_field(), {{0, 0, 0}, {1, 0, 0}, 0}), DomainError);
}

TEST_CASE("null projection examples") {
  auto ps = null_project(fold_field(), {0, 0, 1}, {0, 1}, 2);
  REQUIRE(ps.size() == 2);
  CHECK(ps[0][2] == doctest::Approx(-1.0));
  CHECK(ps[1][2] == doctest::Approx(1.0));
  CHECK(ps[1][1] == 1.0);
  CHECK(null_project(fold_field(), {0, 0, -1}, {0, 1}, 2).empty());
  for (std::size_t f = 0; f < 3; ++f) {
    ps = null_project(fold_field(), {0.5, 0.1, 1.3}, {0, 0}, f);
    REQUIRE(ps.size() == 1);
    CHECK(ps[0] == Vec3{0, 0, 0});
  }
}

TEST_CASE("hamiltonian vector field examples") {
  const PhaseVelocity v = ham_rhs(fold_field(), {{0, 0, 1}, {0, 1, 1}, 0});
  CHECK(v.qdot[0] == 0.0);
  CHECK(v.qdot[1] == 1.0);
  CHECK(v.qdot[2] == -1.0);
  CHECK(v.pdot[0] == 0.0);
  CHECK(v.pdot[1] == 0.0);
  CHECK(v.pdot[2] == -0.5);
  const PhaseVelocity z = ham_rhs(fold_field(), {{0.2, 0.4, 1.5}, {0, 0, 0}, 0});
  CHECK(z.qdot == Vec3{0, 0, 0});
  CHECK(z.pdot == Vec3{0, 0, 0});
  // y' = p2 whatever the point
  const PhaseVelocity w = ham_rhs(fold_field(), {{-1.2, 3, 0.4}, {0.3, 0.77, -0.1}, 0});
  CHECK(w.qdot[1] == doctest::Approx(0.77).epsilon(1e-15));
}

TEST_CASE("hamiltonian vector field matches finite differences of H") {
  const BicharState st{{0.3, -0.2, 1.4}, {0.5, 0.8, -0.6}, 0};
  const PhaseVelocity v = ham_rhs(fold_field(), st);
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    BicharState a = st, b = st;
    a.p[i] += h;
    b.p[i] -= h;
    CHECK(v.qdot[i] == doctest::Approx((hamiltonian(fold_field(), a) - hamiltonian(fold_field(), b)) / (2 * h))
                           .epsilon(1e-8));
    a = st;
    b = st;
    a.q[i] += h;
    b.q[i] -= h;
    CHECK(v.pdot[i] == doctest::Approx(-(hamiltonian(fold_field(), a) - hamiltonian(fold_field(), b)) / (2 * h))
                           .epsilon(1e-8));
  }
}

TEST_CASE("trace: reaches the parabolic boundary from Z = 1") {
  const auto ps = null_project(fold_field(), {0, 0, 1}, {0, 1}, 2);
  REQUIRE(ps.size() == 2);
  // p3 = +1 gives Z' = -1
  const Trace tr = trace_bicharacteristic(fold_field(), {{0, 0, 1}, ps[1], 0}, {1e-3, 5000});
  CHECK(tr.termination == Termination::ParabolicBoundary);
  CHECK(tr.states.back().q[2] < 0.01);
  CHECK(tr.states.back().q[2] > 0.0);
  for (std::size_t i = 1; i < tr.states.size(); ++i) CHECK(tr.states[i].s > tr.states[i - 1].s);
  CHECK_FALSE(tr.conserved.empty());
}

TEST_CASE("trace: fixed point, rejection, domain exit") {
  const Trace still = trace_bicharacteristic(fold_field(), {{0.1, 0.2, 1}, {0, 0, 0}, 0}, {1e-3, 50});
  CHECK(still.termination == Termination::MaxSteps);
  CHECK(still.states.size() == 51);
  CHECK(still.states.back().q == ChartPoint{0.1, 0.2, 1});
  CHECK_THROWS_AS(trace_bicharacteristic(fold_field(), {{0, 0, 1}, {1, 0, 0}, 0}), DomainError);
  TraceOptions box;
  box.box_max = {1e6, 0.05, 1e6};
  const Trace out = trace_bicharacteristic(fold_field(), fold_null_state(0.3, 1.0, 1.0, 1), box);
  CHECK(out.termination == Termination::DomainExit);
}

TEST_CASE("trace: Hamiltonian drift and first integrals over 1000 steps") {
  for (double C1 : {0.0, 0.4, -0.7})
    for (int sigma : {1, -1}) {
      const Trace tr = trace_bicharacteristic(fold_field(), fold_null_state(C1, 1.0, 1.5, sigma), {1e-3, 1000});
      CHECK(tr.termination == Termination::MaxSteps);
      double drift = 0, c1 = 0, c2 = 0;
      for (std::size_t i = 0; i < tr.states.size(); ++i) {
        drift = std::max(drift, std::abs(tr.H[i]));
        c1 = std::max(c1, std::abs(tr.conserved[i][0] - C1));
        c2 = std::max(c2, std::abs(tr.conserved[i][1] - 1.0));
      }
      CHECK(drift <= 1e-8);
      CHECK(c1 <= 1e-8);
      CHECK(c2 <= 1e-8);
    }
}

TEST_CASE("trace: agrees with the integrated light-like geodesics") {
  std::vector<BicharState> starts;
  std::vector<Oracle> oracles;
  const double c2s[5] = {1.0, -1.3, 0.7, 1.6, -0.9};
  int k = 0;
  for (double Z0 : {0.5, 1.0, 1.5, 2.0, 3.0})
    for (double frac : {0.2, 0.4, 0.6, 0.8, 0.95}) {
        const double C2 = c2s[k++ % 5];
        const double C1 = frac * std::abs(C2) * std::sqrt(Z0);
        starts.push_back(fold_null_state(C1, C2, Z0, 1));
        oracles.push_back({C1, C2});
      }
  const auto traces = trace_sweep(fold_field(), starts, {1e-3, 1500});
  for (std::size_t k = 0; k < traces.size(); ++k) {
    const Oracle& o = oracles[k];
    const double Z0 = starts[k].q[2];
    double err = 0;
    for (const auto& st : traces[k].states) {
      err = std::max(err, std::abs(st.q[0] - (o.x(st.q[2]) - o.x(Z0))));
      err = std::max(err, std::abs(st.q[1] - (o.y(st.q[2]) - o.y(Z0))));
      const auto d = analytic_null_geodesic(o.C1, o.C2, Z0, st.q[2]);
      err = std::max(err, std::abs(st.q[0] - d.dx));
      err = std::max(err, std::abs(st.q[1] - d.dy));
      err = std::max(err, std::abs(st.s - d.s));
    }
    CHECK(err <= 1e-6);
  }
}

TEST_CASE("analytic geodesic examples") {
  auto d = analytic_null_geodesic(0, 1, 0, 1);
  CHECK(d.dy == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(d.dx == 0.0);
  d = analytic_null_geodesic(0.3, 1.1, 0.8, 0.8);
  CHECK(d.s == 0.0);
  CHECK(d.dx == 0.0);
  CHECK(d.dy == 0.0);
  d = analytic_null_geodesic(0, 1, 0, 4);
  CHECK(d.dy == doctest::Approx(16.0 / 3).epsilon(1e-15));
  CHECK(analytic_null_geodesic(0, 1, 0, 4, -1).dy == -d.dy);
  CHECK(null_geodesic_dy_squared_from_turning(Rational(0), Rational(1), Rational(1)) == Rational(4, 9));
  CHECK(null_geodesic_dy_squared_from_turning(Rational(0), Rational(1), Rational(4)) == Rational(256, 9));
  // consistency of the exact route with the floating one away from C1 = 0
  const Rational q = null_geodesic_dy_squared_from_turning(Rational(1, 2), Rational(3, 2), Rational(2));
  const double dy = analytic_null_geodesic(0.5, 1.5, 0.25 / 2.25, 2).dy;
  CHECK(q.to_double() == doctest::Approx(dy * dy).epsilon(1e-14));
  CHECK_THROWS_AS(analytic_null_geodesic(1, 1, 0.5, 2), DomainError);
  CHECK_THROWS_AS(analytic_null_geodesic(0, 0, 1, 2), DomainError);
}

TEST_CASE("cusp exponent of near-boundary traces") {
  const double rho = 0.01;
  // outward branch, and the same geodesic run backwards into the cusp
  TraceOptions out_opts{5e-7, 100000};
  out_opts.box_max = {1, 1, 10 * rho * 1.01};
  const Trace out = trace_bicharacteristic(fold_field(), fold_null_state(0, 1, rho, 1), out_opts);
  CHECK(out.termination == Termination::DomainExit);
  TraceOptions in_opts{1e-8, 200000};
  in_opts.stop_tol = 4e-4 * 8 * rho * rho;  // |det h| = 8 Z^2: stop near Z = rho / 50
  const Trace in = trace_bicharacteristic(fold_field(), fold_null_state(0, -1, rho, -1), in_opts);
  CHECK(in.termination == Termination::ParabolicBoundary);
  const double y_cusp = in.states.back().q[1];
  std::vector<double> lz, ly;
  for (const auto& st : out.states)
    if (st.q[2] >= 2 * rho && st.q[2] <= 10 * rho) {
      lz.push_back(std::log(st.q[2]));
      ly.push_back(std::log(std::abs(st.q[1] - y_cusp)));
    }
  REQUIRE(lz.size() > 100);
  const double alpha = least_squares_slope(lz, ly);
  CHECK(std::abs(alpha - 1.5) <= 0.015);
}

TEST_CASE("traces satisfy the geodesic equations at second order") {
  // x'' = -x'Z'/Z, y'' = 0, Z'' = (x'^2 - Z'^2)/(2Z), q'' by central differences
  auto max_residual = [](double dt) {
    const Trace tr = trace_bicharacteristic(fold_field(), fold_null_state(0.4, 1.0, 1.0, 1),
                                            {dt, static_cast<std::size_t>(0.5 / dt)});
    double r = 0;
    for (std::size_t i = 1; i + 1 < tr.states.size(); ++i) {
      const auto& a = tr.states[i - 1].q;
      const auto& b = tr.states[i].q;
      const auto& c = tr.states[i + 1].q;
      const Vec3 v = ham_rhs(fold_field(), tr.states[i]).qdot;
      const double Z = b[2];
      const double acc[3] = {(a[0] - 2 * b[0] + c[0]) / (dt * dt), (a[1] - 2 * b[1] + c[1]) / (dt * dt),
                             (a[2] - 2 * b[2] + c[2]) / (dt * dt)};
      r = std::max(r, std::abs(acc[0] + v[0] * v[2] / Z));
      r = std::max(r, std::abs(acc[1]));
      r = std::max(r, std::abs(acc[2] - (v[0] * v[0] - v[2] * v[2]) / (2 * Z)));
    }
    return r;
  };
  const double r1 = max_residual(1e-2), r2 = max_residual(5e-3);
  CHECK(r2 < r1);
  CHECK(std::log2(r1 / r2) >= 1.8);
}

TEST_CASE("eikonal residual examples") {
  for (double Z : {0.3, 1.0, 2.5}) {
    const Vec3 grad{0, 1, -std::sqrt(Z)};
    CHECK(std::abs(eikonal_residual_gradient(fold_field(), {0.7, -1, Z}, grad)) <= 1e-15);
  }
  const std::vector<std::string> v{"x", "y", "Z"};
  CHECK(eikonal_residual(fold_example(), parse_poly("7", v), {0, 0, 1}) == 0.0);
  CHECK(eikonal_residual(fold_example(), parse_poly("x", v), {0, 0, 1}) == -0.5);
  CHECK_THROWS_AS(eikonal_residual(fold_example(), parse_poly("x", v), {0, 0, 0}), DomainError);
}

TEST_CASE("trace csv") {
  const Trace tr = trace_bicharacteristic(fold_field(), {{0, 0, 1}, {0, 0, 0}, 0}, {1e-3, 1});
  std::ostringstream os;
  write_trace_csv(os, tr);
  CHECK(os.str() ==
        "s,q1,q2,q3,p1,p2,p3,H,det_h,xdot_Z,ydot\n"
        "0,0,0,1,0,0,0,0,8,0,0\n"
        "0.001,0,0,1,0,0,0,0,8,0,0\n"
        "# termination: MaxSteps\n");
}
