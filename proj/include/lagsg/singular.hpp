#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lagsg/chart.hpp"
#include "lagsg/grid.hpp"
#include "lagsg/horner.hpp"
#include "lagsg/ma_core.hpp"
#include "lagsg/sym3.hpp"

namespace lagsg {

// det of d(x, y, z)/d(chart variables). ClassicalP: 1; DualT: -T_ZZ;
// DualS: S_XX S_YY - S_XY^2; DualR: det Hess R.
double dpi_det(const GeneratingFunction& gf, const ChartPoint& pt);
// Exact polynomial whose zero set (in chart coordinates) is the singular locus.
Poly singular_locus_poly(const GeneratingFunction& gf);

// Compiled immersion, Jacobian, geopotential and projection determinant of
// one generating function. Build once per sweep; immutable and thread-safe.
class ChartEvaluator {
 public:
  explicit ChartEvaluator(GeneratingFunction gf);

  const GeneratingFunction& generating_function() const { return gf_; }
  AmbientPoint immersion(const ChartPoint& q) const;
  Jacobian6x3 jacobian(const ChartPoint& q) const;
  Vec3 base(const ChartPoint& q) const;
  double dpi(const ChartPoint& q) const { return dpi_(q); }
  // Geopotential through q. Throws InvalidArgument on ClassicalP.
  double P(const ChartPoint& q) const;

 private:
  GeneratingFunction gf_;
  std::array<HornerPoly, 6> imm_;
  std::array<std::array<HornerPoly, 3>, 6> jac_;
  HornerPoly dpi_;
  HornerPoly geo_;
  bool has_geo_ = false;
};

struct CausticSample {
  ChartPoint chart_point{};
  Vec3 base_point{};
  double det_dpi = 0.0;
  unsigned multiplicity = 1;
};

// Two chart variables swept on a grid; the third is solved for on the locus.
struct CausticGrid {
  std::array<std::size_t, 2> free_vars{0, 1};
  Grid1D first;
  Grid1D second;
};

struct CausticSweep {
  std::vector<CausticSample> samples;                // row-major grid order, roots ascending
  std::vector<std::array<double, 2>> skipped_slices;  // nodes where the restricted locus vanishes identically
  std::size_t rejected = 0;  // roots whose evaluated |det_dpi| exceeded tol
};

CausticSweep caustic_sweep(const GeneratingFunction& gf, const CausticGrid& grid, double tol);

struct GeopotentialPoint {
  double P = 0.0;
  Vec3 base{};
};

// Geopotential as a polynomial in the chart variables (inverse Legendre
// relations): DualT: Z z + T; DualS: X x + Y y - S; DualR: X x + Y y + Z z - R.
// ClassicalP throws InvalidArgument.
Poly geopotential_poly(const GeneratingFunction& gf);
GeopotentialPoint multivalued_P(const GeneratingFunction& gf, const ChartPoint& pt);

// Hessian of the branch geopotential with respect to (x, y, z) at chart point q,
// d(X, Y, Z)/dq * (d(x, y, z)/dq)^-1. Empty at singular points.
std::optional<Mat3> branch_hessian(const GeneratingFunction& gf, const ChartPoint& q);
std::optional<Mat3> branch_hessian(const Jacobian6x3& jac);
// All leading principal minors > tol.
bool is_positive_definite(const Mat3& m, double tol);

struct FiberValue {
  ChartPoint chart_point{};
  unsigned multiplicity = 1;
  bool degenerate = false;  // on the singular locus (fold)
  double P = 0.0;
  bool convex = false;
};

struct SeedFailure {
  ChartPoint seed{};
  std::string reason;
};

struct BranchPoint {
  Vec3 base{};
  std::vector<FiberValue> fiber;
  std::vector<SeedFailure> failures;  // Newton route only
};

struct FiberOptions {
  std::vector<ChartPoint> seeds;  // Newton route (DualS, DualR)
  double newton_tol = 1e-12;
  int max_iterations = 60;
  double convexity_tol = 1e-12;
  double degenerate_tol = 1e-9;  // |det dpi| below this marks a fold point
};

// Chart preimages of a base point. DualT: exact univariate root finding in Z.
// DualS/DualR: Newton from caller seeds. ClassicalP: the base point itself.
BranchPoint fiber_solve(const GeneratingFunction& gf, const Vec3& base, const FiberOptions& opts = {});
BranchPoint fiber_solve(const ChartEvaluator& ev, const Vec3& base, const FiberOptions& opts = {});

struct BranchChoice {
  std::optional<std::size_t> index;
  bool ambiguous = false;  // several convex branches; first one returned
};

BranchChoice branch_select_convex(const BranchPoint& bp, const GeneratingFunction& gf);

// CSV columns: q0,q1,q2 (chart variables, named in the header as chart_<name>),
// x,y,z,det_dpi,multiplicity
void write_caustic_csv(std::ostream& os, const GeneratingFunction& gf, const CausticSweep& sweep);
// One row per fiber value: x,y,z,index,chart_<name> x3,multiplicity,degenerate,P,convex,selected
void write_fiber_csv(std::ostream& os, const GeneratingFunction& gf, const std::vector<BranchPoint>& points);

}  // namespace lagsg
