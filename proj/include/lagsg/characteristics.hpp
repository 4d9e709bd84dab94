#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "lagsg/chart.hpp"
#include "lagsg/metric_field.hpp"
#include "lagsg/rational.hpp"
#include "lagsg/sym3.hpp"

namespace lagsg {

// Point of phase space over a chart: chart coordinates q, conjugate momenta p,
// curve parameter s.
struct BicharState {
  ChartPoint q{};
  Vec3 p{};
  double s = 0.0;
};

enum class Termination { MaxSteps, ParabolicBoundary, DomainExit, Diverged };
std::string_view termination_name(Termination t);

struct Trace {
  std::vector<BicharState> states;
  std::vector<double> H;      // per state
  std::vector<double> det_h;  // per state
  // x'Z and y' per state; filled only for metrics of the fold normal form
  // (see has_fold_normal_form).
  std::vector<std::array<double, 2>> conserved;
  Termination termination = Termination::MaxSteps;
};

struct TraceOptions {
  double step = 1e-3;
  std::size_t max_steps = 1000;
  // |det h| below this ends the trace; 0 selects 1e-6 |det h(q0)|.
  double stop_tol = 0.0;
  // Chart-coordinate box; leaving it ends the trace with DomainExit.
  std::array<double, 3> box_min{-1e6, -1e6, -1e6};
  std::array<double, 3> box_max{1e6, 1e6, 1e6};
  double null_tol = 1e-10;
};

// p^T h^-1 p. Throws DomainError when h(q) is singular.
double hamiltonian(const MetricField& field, const BicharState& state);
double hamiltonian(const GeneratingFunction& gf, const BicharState& state);

// Real completions of p with H(q, p) = 0: `fixed` holds the two components other
// than `free_index`, in index order. Returns 0, 1 or 2 vectors (ascending in the
// free component).
std::vector<Vec3> null_project(const MetricField& field, const ChartPoint& q, std::array<double, 2> fixed,
                               std::size_t free_index);

struct PhaseVelocity {
  Vec3 qdot{};
  Vec3 pdot{};
};

// qdot = 2 h^-1 p; pdot_k = w^T (d_k h) w with w = h^-1 p.
PhaseVelocity ham_rhs(const MetricField& field, const BicharState& state);
PhaseVelocity ham_rhs(const GeneratingFunction& gf, const BicharState& state);

// Classical RK4. Rejects (DomainError) an initial state with |H| > null_tol.
// ParabolicBoundary: |det h| < stop_tol, the signature label departs from the
// starting one, or an RK4 stage lands on a singular metric.
Trace trace_bicharacteristic(const MetricField& field, const BicharState& initial, const TraceOptions& opts = {});
// Independent traces in parallel; output order follows `initials`.
std::vector<Trace> trace_sweep(const MetricField& field, const std::vector<BicharState>& initials,
                               const TraceOptions& opts = {});

// True when h = diag(c Z, k, c Z) in the (x, y, Z) chart with constants c, k:
// then x'Z and y' are first integrals.
bool has_fold_normal_form(const MetricField& field);

// (grad F)^T h^-1 (grad F) with the exact gradient of F (a Poly over the chart variables).
double eikonal_residual(const GeneratingFunction& gf, const Poly& F, const ChartPoint& pt);
// Same with a numerically supplied gradient.
double eikonal_residual_gradient(const MetricField& field, const ChartPoint& pt, const Vec3& grad);

// Light-like geodesics of h = 2(-Z dx^2 + dy^2 - Z dZ^2) with first integrals
// x'Z = C1, y' = C2, moving from Z0 to Z with Z' of sign `sigma` (+1 or -1).
// Returns parameter and coordinate displacements; all three flip with sigma.
struct NullGeodesicDisplacement {
  double s = 0.0;
  double dx = 0.0;
  double dy = 0.0;
};
NullGeodesicDisplacement analytic_null_geodesic(double C1, double C2, double Z0, double Z, int sigma = 1);
// (dy)^2 measured from the turning point Z0 = C1^2 / C2^2, exactly:
// 4 (2 C1^2 + C2^2 Z)^2 (C2^2 Z - C1^2) / (9 C2^6).
Rational null_geodesic_dy_squared_from_turning(const Rational& C1, const Rational& C2, const Rational& Z);

// Null state of the example metric at (x0, y0, Z0) with x'Z = C1, y' = C2 and sign(Z') = sigma:
// p = h qdot / 2 = (-C1, C2, -sigma sqrt(C2^2 Z0 - C1^2)).
BicharState fold_null_state(double C1, double C2, double Z0, int sigma, double x0 = 0.0, double y0 = 0.0);

// Columns s,q1,q2,q3,p1,p2,p3,H,det_h[,xdot_Z,ydot]; trailing "# termination: <name>".
void write_trace_csv(std::ostream& os, const Trace& trace);

}  // namespace lagsg
