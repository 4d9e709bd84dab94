#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lagsg/error.hpp"
#include "lagsg/sg.hpp"

using namespace lagsg;

namespace {

const EpsilonChoice kUnit = EpsilonChoice::from_eps_q(Rational(1));

// Convex branch of the fold example, by hand: P = y^2/2 + (x^2 - 2z)^{3/2}/3.
double v_oracle(double x, double z, double qg = 1.0) { return qg * (x * std::sqrt(x * x - 2 * z) - x); }

}  // namespace

TEST_CASE("epsilon choice") {
  const EpsilonChoice e = EpsilonChoice::from_eps_q(Rational(1, 2), Rational(1, 10));
  CHECK(e.q_g == Rational(5));
  CHECK(e.epsilon * e.q_g == Rational(1, 2));
  CHECK_THROWS_AS(EpsilonChoice::from_eps_q(Rational(1), Rational(0)), DomainError);
  CHECK_THROWS_AS(EpsilonChoice::from_eps_q(Rational(1), Rational(-1)), DomainError);
}

TEST_CASE("branch state examples") {
  const GeneratingFunction gf = fold_example();
  SGState s = branch_state(gf, {1, 0, 0}, {}, kUnit);
  CHECK(s.M == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(s.v_g) <= 1e-14);
  CHECK(s.u_g == 0.0);
  CHECK(s.label == BranchLabel::Elliptic);
  CHECK_FALSE(s.nonunit_eps_q);

  s = branch_state(gf, {2, 0, 0}, {}, kUnit);
  CHECK(s.M == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(s.v_g == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.chart_point[2] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(s.theta_eps == doctest::Approx(-2.0).epsilon(1e-14));  // P_z = Z = -sqrt(x^2 - 2z)
  CHECK(s.P == doctest::Approx(8.0 / 3).epsilon(1e-14));

  s = branch_state(gf, {0.5, 3, -1}, {}, kUnit);
  CHECK(s.N == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::abs(s.u_g) <= 1e-14);
}

TEST_CASE("branch state errors and the other branch") {
  const GeneratingFunction gf = fold_example();
  CHECK_THROWS_AS(branch_state(gf, {1, 0, 1}, {}, kUnit), DomainError);   // above the caustic
  CHECK_THROWS_AS(branch_state(gf, {0, 0, 0}, {}, kUnit), DomainError);   // on it
  CHECK_THROWS_AS(branch_state(gf, {2, 0, 0}, {BranchRequest{5}}, kUnit), DomainError);
  // fiber roots are ascending in Z: index 1 is the Z > 0 branch
  const SGState s = branch_state(gf, {2, 0, 0}, BranchRequest{1}, kUnit);
  CHECK(s.chart_point[2] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.label == BranchLabel::Hyperbolic);
  CHECK(s.M == doctest::Approx(-4.0).epsilon(1e-14));
}

TEST_CASE("velocity examples") {
  const GeneratingFunction gf = fold_example();
  Velocity v = velocity_reconstruct(branch_state(gf, {2, 0, 0}, {}, kUnit), gf, kUnit);
  CHECK(std::abs(v.u) <= 1e-12);
  CHECK(v.v == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(v.w) <= 1e-12);
  v = velocity_reconstruct(branch_state(gf, {1, 0, 0}, {}, kUnit), gf, kUnit);
  CHECK(std::abs(v.u) + std::abs(v.v) + std::abs(v.w) <= 1e-12);

  // rest state of a convex quadratic
  const GeneratingFunction q(ChartKind::ClassicalP, "(x^2 + y^2 + z^2)/2", Rational(1));
  const SGState s = branch_state(q, {0.3, -0.7, 1.1}, {}, kUnit);
  CHECK(s.u_g == 0.0);
  CHECK(s.v_g == 0.0);
  CHECK(s.label == BranchLabel::Elliptic);
  v = velocity_reconstruct(s, q, kUnit);
  CHECK(v.u == 0.0);
  CHECK(v.v == 0.0);
  CHECK(v.w == 0.0);
}

TEST_CASE("property: meridional purity and back-substitution on the convex branch") {
  const GeneratingFunction gf = fold_example();
  int inside = 0;
  for (int i = 0; i <= 40; ++i)
    for (int k = 0; k <= 40; ++k) {
      const double x = -2 + 0.1 * i, z = -2 + 0.1 * k;
      if (z >= x * x / 2 - 1e-9) continue;
      const SGState s = branch_state(gf, {x, 0.25, z}, {}, kUnit);
      const Velocity v = velocity_reconstruct(s, gf, kUnit);
      CHECK(std::abs(v.u) <= 1e-12);
      CHECK(std::abs(v.w) <= 1e-12);
      CHECK(std::abs(v.v - s.v_g) <= 1e-10);
      CHECK(std::abs(v.v - v_oracle(x, z)) <= 1e-10);
      CHECK(v.residual <= 1e-10);
      CHECK(s.hessian.det() == doctest::Approx(1.0).epsilon(1e-10));
      // poleward for x > 0 once x sqrt(x^2 - 2z) exceeds x
      const double expected = x * (std::sqrt(x * x - 2 * z) - 1);
      if (std::abs(expected) > 1e-9) CHECK((v.v > 0) == (expected > 0));
      ++inside;
    }
  CHECK(inside > 800);
}

TEST_CASE("property: epsilon scaling") {
  // Only q_g sets the geostrophic wind; epsilon rescales the theta row, which
  // has zero right-hand side, so (u, v, w) track q_g.
  const GeneratingFunction gf = fold_example();
  const EpsilonChoice e = EpsilonChoice::from_eps_q(Rational(1), Rational(1, 10));
  for (double x : {-1.5, 0.7, 1.9}) {
    const SGState s = branch_state(gf, {x, 0, -0.4}, {}, e);
    CHECK(s.v_g == doctest::Approx(v_oracle(x, -0.4, 10.0)).epsilon(1e-12));
    const Velocity v = velocity_reconstruct(s, gf, e);
    CHECK(v.v == doctest::Approx(s.v_g).epsilon(1e-12));
    CHECK(v.residual <= 1e-9);
  }
  const GeneratingFunction g2(ChartKind::DualT, "y^2/2 - x^2*Z/2 + Z^3/3", Rational(1, 2));
  CHECK(branch_state(g2, {2, 0, 0}, {}, EpsilonChoice::from_eps_q(Rational(1, 2))).nonunit_eps_q);
}

TEST_CASE("wind sweep") {
  const GeneratingFunction gf = fold_example();
  WindSection sec;  // (x, z) on [-2, 2]^2, y = 0
  const auto rows = wind_field_sweep(gf, {}, sec, kUnit);
  REQUIRE(rows.size() == 41 * 41);
  auto at = [&](double x, double z) -> const WindRow& {
    const auto i = static_cast<std::size_t>(std::lround((x + 2) * 10));
    const auto k = static_cast<std::size_t>(std::lround((z + 2) * 10));
    return rows[i * 41 + k];
  };
  CHECK(at(2, 0).flag == DomainFlag::Inside);
  CHECK(at(2, 0).speed == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(at(0, -1).flag == DomainFlag::Inside);
  CHECK(std::abs(at(0, -1).state.v) <= 1e-12);
  CHECK(at(1, 1).flag == DomainFlag::Outside);
  CHECK(at(0, 0).flag == DomainFlag::Caustic);
  for (const auto& r : rows) {
    const double x = r.base[0], z = r.base[2];
    if (z > x * x / 2 + 1e-9) CHECK(r.flag == DomainFlag::Outside);
    if (r.flag == DomainFlag::Inside) CHECK(std::abs(r.state.v - v_oracle(x, z)) <= 1e-10);
  }
  // deterministic output
  std::ostringstream a, b;
  write_wind_csv(a, rows);
  write_wind_csv(b, wind_field_sweep(gf, {}, sec, kUnit));
  CHECK(a.str() == b.str());
}

TEST_CASE("wind csv") {
  WindSection sec;
  sec.first = {2, 2, 1};
  sec.second = {0, 1, 2};
  const auto rows = wind_field_sweep(fold_example(), {}, sec, kUnit);
  std::ostringstream os;
  write_wind_csv(os, rows);
  CHECK(os.str() ==
        "x,y,z,domain_flag,P,M,N,theta_eps,u_g,v_g,u,v,w,|v|\n"
        "2,0,0,in,2.6666666666666665,4,0,-2,0,2,0,2,0,2\n"
        // sqrt(2): P = 2^{3/2}/3, M = 2 sqrt 2, theta = -sqrt 2, v = 2 sqrt 2 - 2
        "2,0,1,in,0.94280904158206302,2.8284271247461898,0,-1.4142135623730949,0,0.82842712474618985,0,"
        "0.82842712474618985,0,0.82842712474618985\n");
}
