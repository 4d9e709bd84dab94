#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "lagsg/error.hpp"
#include "lagsg/ma_core.hpp"

using namespace lagsg;

namespace {

GeneratingFunction quad_P(const char* text, Rational eps = Rational(1)) {
  return GeneratingFunction(ChartKind::ClassicalP, text, eps);
}

void check_sym(const Sym3& got, const Sym3& want, double tol) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(got(i, j) - want(i, j)) <= tol);
}

// x z - eps y^2/2 - f(x): det Hess = eps for every f; indefinite everywhere.
GeneratingFunction sheared_saddle(testgen::Gen& g, const Rational& eps) {
  const std::vector<std::string> v{"x", "y", "z"};
  Poly p = parse_poly("x*z", v) - Poly::constant(v, eps / Rational(2)) * parse_poly("y^2", v);
  for (unsigned k = 2; k <= 6; ++k) p -= Poly::monomial(v, {k, 0, 0}, g.rational());
  return GeneratingFunction(ChartKind::ClassicalP, p, eps);
}

// A^T D A with A unit lower triangular (rational), d1 d2 d3 = eps.
GeneratingFunction quadratic_solution(testgen::Gen& g, const Rational& eps, bool convex) {
  const std::vector<std::string> v{"x", "y", "z"};
  Rational d1 = Rational(g.integer(1, 4), g.integer(1, 3));
  Rational d2 = Rational(g.integer(1, 4), g.integer(1, 3));
  if (!convex) {
    d1 = -d1;
    d2 = -d2;
  }
  const Rational d3 = eps / (d1 * d2);
  const Rational l10 = g.rational(), l20 = g.rational(), l21 = g.rational();
  // P = (d1 u^2 + d2 w^2 + d3 t^2)/2 with u = x + l10 y + l20 z, w = y + l21 z, t = z
  const Poly x = Poly::variable(v, "x"), y = Poly::variable(v, "y"), z = Poly::variable(v, "z");
  const Poly u = x + l10 * y + l20 * z;
  const Poly w = y + l21 * z;
  const Poly p = Rational(1, 2) * (d1 * u.pow(2) + d2 * w.pow(2) + d3 * z.pow(2));
  return GeneratingFunction(ChartKind::ClassicalP, p, eps);
}

}  // namespace

TEST_CASE("hessian examples") {
  const ChartPoint any{0.3, -1.2, 2.0};
  check_sym(hessian(quad_P("(x^2 + y^2 + z^2)/2"), any), Sym3::diagonal(1, 1, 1), 0.0);
  check_sym(hessian(fold_example(), {0, 0, 1}), Sym3::diagonal(-1, 1, 1), 0.0);
  check_sym(hessian(quad_P("-x^2/2 - y^2/2 + z^2/2"), any), Sym3::diagonal(-1, -1, 1), 0.0);
}

TEST_CASE("residual examples") {
  CHECK(ma_residual_poly(fold_example()).is_zero());
  CHECK(ma_residual(fold_example(), {0.4, 1.0, -1.3}) == 0.0);
  CHECK(ma_residual(quad_P("(x^2 + y^2 + z^2)/2"), {1, 2, 3}) == 0.0);
  CHECK(ma_residual(quad_P("(x^2 + y^2 + z^2)/2", Rational(2)), {1, 2, 3}) == -1.0);
  // R chart: det Hess R = 1/eps_q
  const GeneratingFunction r(ChartKind::DualR, "(X^2 + Y^2)/2 + Z^2/4", Rational(2));
  CHECK(ma_residual_poly(r).is_zero());
  // S chart: eps_q (S_XX S_YY - S_XY^2) + S_zz
  const GeneratingFunction s(ChartKind::DualS, "(X^2 + Y^2)/2 - z^2/2", Rational(1));
  CHECK(ma_residual_poly(s).is_zero());
}

TEST_CASE("immersion examples") {
  const AmbientPoint a = immersion(fold_example(), {2, 0, 0});
  CHECK(a == AmbientPoint{2, 0, 2, 0, 0, 0});
  CHECK(immersion(quad_P("(x^2 + y^2 + z^2)/2"), {1, 2, 3}) == AmbientPoint{1, 2, 3, 1, 2, 3});
  CHECK(immersion(fold_example(), {0, 0, 1}) == AmbientPoint{0, 0, -0.5, 0, 0, 1});
  // X = T_x = -x Z
  CHECK(immersion(fold_example(), {2, 0, -2})[kMomX] == 4.0);
}

TEST_CASE("immersion jacobian examples") {
  const auto gf = quad_P("x^3*y + z^2 - x*y*z");
  const ChartPoint pt{0.5, -1.0, 2.0};
  const auto j = immersion_jacobian(gf, pt);
  const Sym3 h = hessian(gf, pt);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      CHECK(j[r][c] == (r == c ? 1.0 : 0.0));
      CHECK(j[r + 3][c] == h(r, c));
    }
  const auto jt = immersion_jacobian(fold_example(), {0, 0, 1});
  const Jacobian6x3 want{{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  CHECK(jt == want);
  const GeneratingFunction r(ChartKind::DualR, "X^2*Y + Z^3 - X*Z", Rational(1));
  const auto jr = immersion_jacobian(r, pt);
  const Sym3 hr = hessian(r, pt);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t c = 0; c < 3; ++c) {
      CHECK(jr[a + 3][c] == (a == c ? 1.0 : 0.0));
      CHECK(jr[a][c] == hr(a, c));
    }
}

TEST_CASE("ambient metric") {
  for (long e : {1L, 3L}) {
    const auto g = ambient_metric(GeneratingFunction(ChartKind::ClassicalP, "0", Rational(e)));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        const bool paired = (i + 3 == j) || (j + 3 == i);
        CHECK(g[i][j] == (paired ? static_cast<double>(e) : 0.0));
      }
    // e_i +/- e_{i+3} are eigenvectors with eigenvalue +/- eps: signature (3,3)
    for (std::size_t i = 0; i < 3; ++i)
      for (int s : {1, -1}) {
        std::array<double, 6> v{};
        v[i] = 1;
        v[i + 3] = s;
        for (std::size_t r = 0; r < 6; ++r) {
          double gv = 0;
          for (std::size_t c = 0; c < 6; ++c) gv += g[r][c] * v[c];
          CHECK(gv == s * e * v[r]);
        }
      }
  }
}

TEST_CASE("pull-back metric examples and symbolic closed form") {
  check_sym(pullback_metric(fold_example(), {0, 0, 1}), Sym3::diagonal(-2, 2, -2), 0.0);
  check_sym(pullback_metric(quad_P("(x^2 + y^2 + z^2)/2"), {1, 1, 1}), Sym3::diagonal(2, 2, 2), 0.0);
  check_sym(pullback_metric(fold_example(), {0, 0, -1}), Sym3::diagonal(2, 2, 2), 0.0);
  const SymPoly3 h = pullback_metric_polys(fold_example());
  const std::vector<std::string> v{"x", "y", "Z"};
  CHECK(h[Sym3::slot(0, 0)] == parse_poly("-2*Z", v));
  CHECK(h[Sym3::slot(1, 1)] == parse_poly("2", v));
  CHECK(h[Sym3::slot(2, 2)] == parse_poly("-2*Z", v));
  CHECK(h[Sym3::slot(0, 1)].is_zero());
  CHECK(h[Sym3::slot(0, 2)].is_zero());
  CHECK(h[Sym3::slot(1, 2)].is_zero());
}

TEST_CASE("classify examples") {
  const Signature hyp = classify(fold_example(), {0, 0, 1});
  CHECK(hyp.label == SignatureLabel::Hyperbolic);
  CHECK(hyp.n_pos == 1);
  CHECK(hyp.n_neg == 2);
  const Signature par = classify(fold_example(), {0, 0, 0});
  CHECK(par.label == SignatureLabel::Parabolic);
  CHECK(par.n_zero == 2);
  CHECK(classify(quad_P("(x^2 + y^2 + z^2)/2"), {0, 0, 0}).label == SignatureLabel::Elliptic);
  CHECK(classify(Sym3::diagonal(1, -1, 1)).label == SignatureLabel::Other);
  CHECK(label_name(SignatureLabel::Hyperbolic) == "hyperbolic");
}

TEST_CASE("linearization matrix examples") {
  check_sym(linearization_matrix(quad_P("(x^2 + y^2 + z^2)/2"), {0, 0, 0}), Sym3::diagonal(1, 1, 1), 0.0);
  check_sym(linearization_matrix(fold_example(), {0, 0, 1}), Sym3::diagonal(1, -1, 1), 0.0);
  CHECK_THROWS_AS(linearization_matrix(GeneratingFunction(ChartKind::DualS, "X*Y", Rational(1)), {0, 0, 0}),
                  InvalidArgument);
}

TEST_CASE("property: closed forms on P-chart solutions") {
  testgen::Gen g(31);
  for (int it = 0; it < 60; ++it) {
    const Rational eps(g.integer(1, 5), g.integer(1, 3));
    const GeneratingFunction gf = (it % 3 == 0)   ? sheared_saddle(g, eps)
                                  : (it % 3 == 1) ? quadratic_solution(g, eps, true)
                                                  : quadratic_solution(g, eps, false);
    REQUIRE(ma_residual_poly(gf).is_zero());
    for (int k = 0; k < 10; ++k) {
      const ChartPoint pt{g.real(-2, 2), g.real(-2, 2), g.real(-2, 2)};
      const Sym3 h = pullback_metric(gf, pt);
      const double e = eps.to_double();
      CHECK(relative_difference(h, (2 * e) * hessian(gf, pt)) <= 1e-12);
      CHECK(relative_difference(h, 2.0 * linearization_matrix(gf, pt).adj()) <= 1e-10);
      CHECK(std::abs(h.det() - 8 * std::pow(e, 4)) <= 1e-10 * 8 * std::pow(e, 4) * (1 + h.max_abs()));
      const Signature s = classify(h);
      CHECK(s.label != SignatureLabel::Parabolic);
      CHECK(s.label != SignatureLabel::Other);
    }
  }
}

TEST_CASE("property: T-chart block form and adjugate identity on the example") {
  testgen::Gen g(32);
  for (int k = 0; k < 200; ++k) {
    const ChartPoint pt{g.real(-2, 2), g.real(-2, 2), g.real(-2, 2)};
    const Sym3 h = pullback_metric(fold_example(), pt);
    CHECK(relative_difference(h, dual_t_block_metric(fold_example(), pt)) <= 1e-14);
    CHECK(relative_difference(h, 2.0 * linearization_matrix(fold_example(), pt).adj()) <= 1e-14);
  }
  // away from a solution the two routes differ by the residual
  const GeneratingFunction off(ChartKind::DualT, "y^2/2 - x^2*Z/2 + Z^3/5", Rational(1));
  const ChartPoint pt{0.5, 0.0, 1.0};
  CHECK(relative_difference(pullback_metric(off, pt), dual_t_block_metric(off, pt)) > 1e-3);
}

TEST_CASE("property: finite-difference Hessian converges at second order") {
  const GeneratingFunction gf(ChartKind::ClassicalP, "x^4*y - 3*x*y^2*z^3 + z^5/7 + x^2*z^2", Rational(1));
  const ChartPoint pt{0.7, -0.4, 0.9};
  auto f = [&](double a, double b, double c) {
    const std::array<double, 3> q{a, b, c};
    return gf.potential().eval(std::span<const double>(q));
  };
  auto fd_error = [&](double step) {
    const Sym3 exact = hessian(gf, pt);
    double err = 0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) {
        auto shifted = [&](int si, int sj) {
          ChartPoint q = pt;
          q[i] += si * step;
          q[j] += sj * step;
          return f(q[0], q[1], q[2]);
        };
        const double approx =
            (shifted(1, 1) - shifted(1, -1) - shifted(-1, 1) + shifted(-1, -1)) / (4 * step * step);
        err = std::max(err, std::abs(approx - exact(i, j)));
      }
    return err;
  };
  double prev = fd_error(0.08);
  for (double step : {0.04, 0.02, 0.01}) {
    const double e = fd_error(step);
    CHECK(std::log2(prev / e) >= 1.9);
    prev = e;
  }
}

TEST_CASE("generating function records") {
  const auto j = to_json(fold_example());
  CHECK(j.at("chart") == "T");
  const GeneratingFunction back = generating_function_from_json(j);
  CHECK(back.potential() == fold_example().potential());
  CHECK(back.eps_q() == Rational(1));
  CHECK_THROWS(generating_function_from_json(nlohmann::json::parse(R"({"chart":"T","potential":"Z","bogus":1})")));
  CHECK_THROWS(generating_function_from_json(nlohmann::json::parse(R"({"chart":"Q","potential":"Z"})")));
  CHECK_THROWS_AS(GeneratingFunction(ChartKind::DualT, "Z", Rational(0)), DomainError);
  CHECK_THROWS_AS(GeneratingFunction(ChartKind::DualT, "X", Rational(1)), Error);
  const auto s = generating_function_from_json(nlohmann::json::parse(R"({"chart":"S","potential":"X*z","eps_q":"3/2"})"));
  CHECK(s.chart() == ChartKind::DualS);
  CHECK(s.eps_q() == Rational(3, 2));
}
