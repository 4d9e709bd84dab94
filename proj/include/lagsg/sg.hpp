#pragma once

#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "lagsg/chart.hpp"
#include "lagsg/grid.hpp"
#include "lagsg/rational.hpp"
#include "lagsg/singular.hpp"
#include "lagsg/sym3.hpp"

namespace lagsg {

// Rossby number and potential vorticity kept apart; only eps_q = epsilon * q_g
// enters the equation, but the wind formulas use q_g alone.
struct EpsilonChoice {
  Rational epsilon{1};
  Rational q_g{1};
  // q_g = eps_q / epsilon. Throws DomainError unless epsilon > 0.
  static EpsilonChoice from_eps_q(const Rational& eps_q, const Rational& epsilon = Rational(1));
};

enum class BranchLabel { Elliptic, Hyperbolic, Degenerate };
std::string_view branch_label_name(BranchLabel l);  // "elliptic", ...

// Which preimage of the base point to follow: the convex one, or a fixed index
// into fiber_solve's output.
struct BranchRequest {
  std::optional<std::size_t> index;  // empty: convex branch
};

struct SGState {
  Vec3 base{};
  ChartPoint chart_point{};
  double P = 0.0;
  double M = 0.0, N = 0.0;  // absolute momentum
  double theta_eps = 0.0;   // epsilon * potential temperature = P_z
  double u_g = 0.0, v_g = 0.0;
  double u = 0.0, v = 0.0, w = 0.0;  // filled by velocity_reconstruct
  BranchLabel label = BranchLabel::Degenerate;
  Mat3 hessian{};  // Hess P on the branch, by implicit differentiation
  // eps_q != 1: the wind identities are applied as written but lie outside the
  // normalization they were stated in.
  bool nonunit_eps_q = false;
};

// Throws DomainError when the base has no preimage (outside the domain), the
// requested branch does not exist, or the fiber point is degenerate.
SGState branch_state(const GeneratingFunction& gf, const Vec3& base, const BranchRequest& branch,
                     const EpsilonChoice& eps, const FiberOptions& fiber = {});

struct Velocity {
  double u = 0.0, v = 0.0, w = 0.0;
  double residual = 0.0;  // max abs back-substitution residual of the 3x3 system
};

// Rows grad M, grad N, grad theta (the last is Hess row 3 divided by epsilon)
// against (u_g, v_g, 0). Throws DomainError on a singular system.
Velocity velocity_reconstruct(const SGState& state, const GeneratingFunction& gf, const EpsilonChoice& eps);

enum class DomainFlag { Inside, Outside, Caustic };
std::string_view domain_flag_name(DomainFlag f);  // "in", "out", "caustic"

// Plane section: two base coordinates swept, the third held fixed.
struct WindSection {
  std::array<std::size_t, 2> axes{0, 2};
  Grid1D first{-2, 2, 41};
  Grid1D second{-2, 2, 41};
  double fixed = 0.0;
};

struct WindRow {
  Vec3 base{};
  DomainFlag flag = DomainFlag::Outside;
  SGState state;  // meaningful only when flag == Inside
  double speed = 0.0;
  double residual = 0.0;
};

// Row-major over (first, second); nodes that fail are flagged, never thrown.
std::vector<WindRow> wind_field_sweep(const GeneratingFunction& gf, const BranchRequest& branch,
                                      const WindSection& section, const EpsilonChoice& eps,
                                      const FiberOptions& fiber = {});

// x,y,z,domain_flag,P,M,N,theta_eps,u_g,v_g,u,v,w,|v|; value columns empty off-domain.
void write_wind_csv(std::ostream& os, const std::vector<WindRow>& rows);

}  // namespace lagsg
