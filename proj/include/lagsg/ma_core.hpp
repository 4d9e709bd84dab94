#pragma once

#include <array>
#include <string_view>

#include "lagsg/chart.hpp"
#include "lagsg/poly.hpp"
#include "lagsg/sym3.hpp"

namespace lagsg {

// (x, y, z, X, Y, Z), indexed by AmbientIndex.
using AmbientPoint = std::array<double, 6>;
// Row = ambient coordinate, column = chart variable.
using Jacobian6x3 = std::array<std::array<double, 3>, 6>;
using Mat6 = std::array<std::array<double, 6>, 6>;

// Symmetric 3x3 matrix of polynomials in the chart variables, Sym3 slot order.
using SymPoly3 = std::array<Poly, 6>;
using PolyJacobian = std::array<std::array<Poly, 3>, 6>;

enum class SignatureLabel { Elliptic, Hyperbolic, Parabolic, Other };
std::string_view label_name(SignatureLabel label);  // "elliptic", ...

struct Signature {
  int n_pos = 0;
  int n_neg = 0;
  int n_zero = 0;
  SignatureLabel label = SignatureLabel::Other;
  double tol = 0.0;
  std::array<double, 3> eigenvalues{};
};

constexpr double kDefaultZeroTol = 1e-9;

// --- symbolic routes (exact, in the chart variables) ---

// Ambient coordinates of the immersed point as polynomials in the chart variables.
std::array<Poly, 6> immersion_polys(const GeneratingFunction& gf);
PolyJacobian immersion_jacobian_polys(const GeneratingFunction& gf);
SymPoly3 hessian_polys(const GeneratingFunction& gf);
// J^T G J with the exact Jacobian.
SymPoly3 pullback_metric_polys(const GeneratingFunction& gf);
// LHS - RHS of the chart's Monge-Ampere equation; zero polynomial iff gf solves it identically.
//   P: det Hess P - eps_q
//   R: det Hess R - 1/eps_q
//   S: eps_q (S_XX S_YY - S_XY^2) + S_zz
//   T: T_xx T_yy - T_xy^2 + eps_q T_ZZ
Poly ma_residual_poly(const GeneratingFunction& gf);
Poly det_poly(const std::array<std::array<Poly, 3>, 3>& m);

// --- numeric evaluation at a chart point ---

Sym3 hessian(const GeneratingFunction& gf, const ChartPoint& pt);
double ma_residual(const GeneratingFunction& gf, const ChartPoint& pt);
AmbientPoint immersion(const GeneratingFunction& gf, const ChartPoint& pt);
Jacobian6x3 immersion_jacobian(const GeneratingFunction& gf, const ChartPoint& pt);
// Matrix of the quadratic form 2 eps_q (dx dX + dy dY + dz dZ): eps_q at each
// (base, momentum) pair, both orders.
Mat6 ambient_metric(const GeneratingFunction& gf);
// J^T G J evaluated numerically.
Sym3 pullback_metric(const GeneratingFunction& gf, const ChartPoint& pt);
Sym3 pullback_from_jacobian(const Jacobian6x3& jac, const Mat6& g);

Signature classify(const Sym3& metric, double tol = kDefaultZeroTol);
Signature classify(const GeneratingFunction& gf, const ChartPoint& pt, double tol = kDefaultZeroTol);

// Coefficient matrix of the linearized equation. ClassicalP: adj(Hess P).
// DualT: [[adj(H), 0], [0, eps_q]] with H the (x, y) block of Hess T.
// Other charts throw InvalidArgument.
Sym3 linearization_matrix(const GeneratingFunction& gf, const ChartPoint& pt);

// T chart, on solutions: 2 [[eps_q H, 0], [0, det H]] with H the (x, y) block of
// Hess T. Differs from the generic pull-back (whose (Z, Z) entry is -2 eps_q T_ZZ)
// exactly by the residual, so comparing the two checks the equation pointwise.
Sym3 dual_t_block_metric(const GeneratingFunction& gf, const ChartPoint& pt);

}  // namespace lagsg
