#include "lagsg/ma_core.hpp"

#include <algorithm>
#include <cmath>

#include "lagsg/error.hpp"

namespace lagsg {
namespace {

std::span<const double> as_span(const ChartPoint& pt) { return {pt.data(), pt.size()}; }

Sym3 evaluate(const SymPoly3& m, const ChartPoint& pt) {
  Sym3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) out.set(i, j, m[Sym3::slot(i, j)].eval(as_span(pt)));
  return out;
}

}  // namespace

std::string_view label_name(SignatureLabel label) {
  switch (label) {
    case SignatureLabel::Elliptic: return "elliptic";
    case SignatureLabel::Hyperbolic: return "hyperbolic";
    case SignatureLabel::Parabolic: return "parabolic";
    case SignatureLabel::Other: return "other";
  }
  return "other";
}

std::array<Poly, 6> immersion_polys(const GeneratingFunction& gf) {
  const auto& vars = gf.variables();
  const Poly& f = gf.potential();
  auto var = [&](std::size_t i) { return Poly::variable(vars, vars[i]); };
  std::array<Poly, 6> out;
  switch (gf.chart()) {
    case ChartKind::ClassicalP:
      // (x, y, z, P_x, P_y, P_z)
      out = {var(0), var(1), var(2), f.diff(0), f.diff(1), f.diff(2)};
      break;
    case ChartKind::DualR:
      // x = R_X, y = R_Y, z = R_Z
      out = {f.diff(0), f.diff(1), f.diff(2), var(0), var(1), var(2)};
      break;
    case ChartKind::DualS:
      // x = S_X, y = S_Y, Z = -S_z
      out = {f.diff(0), f.diff(1), var(2), var(0), var(1), -f.diff(2)};
      break;
    case ChartKind::DualT:
      // z = -T_Z, X = T_x, Y = T_y
      out = {var(0), var(1), -f.diff(2), f.diff(0), f.diff(1), var(2)};
      break;
  }
  return out;
}

PolyJacobian immersion_jacobian_polys(const GeneratingFunction& gf) {
  const auto coords = immersion_polys(gf);
  PolyJacobian jac;
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 3; ++c) jac[r][c] = coords[r].diff(c);
  return jac;
}

SymPoly3 hessian_polys(const GeneratingFunction& gf) {
  SymPoly3 h;
  for (std::size_t i = 0; i < 3; ++i) {
    const Poly di = gf.potential().diff(i);
    for (std::size_t j = i; j < 3; ++j) h[Sym3::slot(i, j)] = di.diff(j);
  }
  return h;
}

SymPoly3 pullback_metric_polys(const GeneratingFunction& gf) {
  const PolyJacobian jac = immersion_jacobian_polys(gf);
  SymPoly3 h;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a; b < 3; ++b) {
      Poly sum(gf.variables());
      for (std::size_t i = 0; i < 3; ++i) sum += jac[i][a] * jac[i + 3][b] + jac[i + 3][a] * jac[i][b];
      h[Sym3::slot(a, b)] = sum * gf.eps_q();
    }
  }
  return h;
}

Poly det_poly(const std::array<std::array<Poly, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Poly ma_residual_poly(const GeneratingFunction& gf) {
  const SymPoly3 h = hessian_polys(gf);
  auto at = [&](std::size_t i, std::size_t j) -> const Poly& { return h[Sym3::slot(i, j)]; };
  const auto& vars = gf.variables();
  const Poly one = Poly::constant(vars, Rational(1));
  switch (gf.chart()) {
    case ChartKind::ClassicalP:
    case ChartKind::DualR: {
      std::array<std::array<Poly, 3>, 3> full;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) full[i][j] = at(i, j);
      const Rational rhs = gf.chart() == ChartKind::ClassicalP ? gf.eps_q() : Rational(1) / gf.eps_q();
      return det_poly(full) - one * rhs;
    }
    case ChartKind::DualS:
      return (at(0, 0) * at(1, 1) - at(0, 1) * at(0, 1)) * gf.eps_q() + at(2, 2);
    case ChartKind::DualT:
      return at(0, 0) * at(1, 1) - at(0, 1) * at(0, 1) + at(2, 2) * gf.eps_q();
  }
  throw InvalidArgument("unknown chart");
}

Sym3 hessian(const GeneratingFunction& gf, const ChartPoint& pt) { return evaluate(hessian_polys(gf), pt); }

double ma_residual(const GeneratingFunction& gf, const ChartPoint& pt) {
  return ma_residual_poly(gf).eval(as_span(pt));
}

AmbientPoint immersion(const GeneratingFunction& gf, const ChartPoint& pt) {
  const auto coords = immersion_polys(gf);
  AmbientPoint out{};
  for (std::size_t r = 0; r < 6; ++r) out[r] = coords[r].eval(as_span(pt));
  return out;
}

Jacobian6x3 immersion_jacobian(const GeneratingFunction& gf, const ChartPoint& pt) {
  const PolyJacobian jac = immersion_jacobian_polys(gf);
  Jacobian6x3 out{};
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 3; ++c) out[r][c] = jac[r][c].eval(as_span(pt));
  return out;
}

Mat6 ambient_metric(const GeneratingFunction& gf) {
  Mat6 g{};
  const double e = gf.eps_q().to_double();
  for (std::size_t i = 0; i < 3; ++i) {
    g[i][i + 3] = e;
    g[i + 3][i] = e;
  }
  return g;
}

Sym3 pullback_from_jacobian(const Jacobian6x3& jac, const Mat6& g) {
  Sym3 h;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a; b < 3; ++b) {
      double sum = 0.0;
      for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t s = 0; s < 6; ++s)
          if (g[r][s] != 0.0) sum += jac[r][a] * g[r][s] * jac[s][b];
      h.set(a, b, sum);
    }
  }
  return h;
}

Sym3 pullback_metric(const GeneratingFunction& gf, const ChartPoint& pt) {
  return pullback_from_jacobian(immersion_jacobian(gf, pt), ambient_metric(gf));
}

Signature classify(const Sym3& metric, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("classification tolerance must be positive");
  Signature sig;
  sig.tol = tol;
  sig.eigenvalues = metric.eigenvalues();
  double largest = 0.0;
  for (double l : sig.eigenvalues) largest = std::max(largest, std::abs(l));
  const double zero = tol * (1.0 + largest);
  for (double l : sig.eigenvalues) {
    if (std::abs(l) <= zero) ++sig.n_zero;
    else if (l > 0.0) ++sig.n_pos;
    else ++sig.n_neg;
  }
  if (sig.n_zero >= 1) sig.label = SignatureLabel::Parabolic;
  else if (sig.n_pos == 3) sig.label = SignatureLabel::Elliptic;
  else if (sig.n_pos == 1 && sig.n_neg == 2) sig.label = SignatureLabel::Hyperbolic;
  else sig.label = SignatureLabel::Other;
  return sig;
}

Signature classify(const GeneratingFunction& gf, const ChartPoint& pt, double tol) {
  return classify(pullback_metric(gf, pt), tol);
}

Sym3 linearization_matrix(const GeneratingFunction& gf, const ChartPoint& pt) {
  const Sym3 hess = hessian(gf, pt);
  switch (gf.chart()) {
    case ChartKind::ClassicalP:
      return hess.adj();
    case ChartKind::DualT: {
      // adj of the 2x2 (x, y) block, then eps_q in the (Z, Z) slot.
      return Sym3(hess(1, 1), -hess(0, 1), 0.0, hess(0, 0), 0.0, gf.eps_q().to_double());
    }
    default:
      throw InvalidArgument("linearization matrix is only available for the P and T charts");
  }
}

}  // namespace lagsg

namespace lagsg {

Sym3 dual_t_block_metric(const GeneratingFunction& gf, const ChartPoint& pt) {
  if (gf.chart() != ChartKind::DualT) throw InvalidArgument("block metric form is defined on the T chart only");
  const Sym3 hess = hessian(gf, pt);
  const double e = gf.eps_q().to_double();
  const double det_h = hess(0, 0) * hess(1, 1) - hess(0, 1) * hess(0, 1);
  return Sym3(2 * e * hess(0, 0), 2 * e * hess(0, 1), 0.0, 2 * e * hess(1, 1), 0.0, 2 * det_h);
}

}  // namespace lagsg
