#include "lagsg/singular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lagsg/error.hpp"
#include "lagsg/format.hpp"
#include "lagsg/metric_field.hpp"
#include "lagsg/parallel.hpp"
#include "lagsg/univariate.hpp"

namespace lagsg {

ChartEvaluator::ChartEvaluator(GeneratingFunction gf) : gf_(std::move(gf)) {
  const auto imm = immersion_polys(gf_);
  const auto jac = immersion_jacobian_polys(gf_);
  for (std::size_t r = 0; r < 6; ++r) {
    imm_[r] = HornerPoly(imm[r]);
    for (std::size_t c = 0; c < 3; ++c) jac_[r][c] = HornerPoly(jac[r][c]);
  }
  dpi_ = HornerPoly(projection_det_poly(gf_));
  if (gf_.chart() != ChartKind::ClassicalP) {
    geo_ = HornerPoly(geopotential_poly(gf_));
    has_geo_ = true;
  }
}

AmbientPoint ChartEvaluator::immersion(const ChartPoint& q) const {
  AmbientPoint out{};
  for (std::size_t r = 0; r < 6; ++r) out[r] = imm_[r](q);
  return out;
}

Jacobian6x3 ChartEvaluator::jacobian(const ChartPoint& q) const {
  Jacobian6x3 out{};
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 3; ++c) out[r][c] = jac_[r][c](q);
  return out;
}

Vec3 ChartEvaluator::base(const ChartPoint& q) const { return {imm_[0](q), imm_[1](q), imm_[2](q)}; }

double ChartEvaluator::P(const ChartPoint& q) const {
  if (!has_geo_) throw InvalidArgument("multivalued geopotential is undefined on the P chart");
  return geo_(q);
}

double dpi_det(const GeneratingFunction& gf, const ChartPoint& pt) {
  return singular_locus_poly(gf).eval(std::span<const double>(pt));
}

Poly singular_locus_poly(const GeneratingFunction& gf) { return projection_det_poly(gf); }

CausticSweep caustic_sweep(const GeneratingFunction& gf, const CausticGrid& grid, double tol) {
  validate(grid.first, "caustic grid (first)");
  validate(grid.second, "caustic grid (second)");
  const auto [f0, f1] = grid.free_vars;
  if (f0 > 2 || f1 > 2 || f0 == f1) throw InvalidArgument("caustic grid needs two distinct chart variables");
  if (!(tol >= 0.0)) throw InvalidArgument("caustic tolerance must be non-negative");
  const std::size_t solved = 3 - f0 - f1;

  const Poly locus = singular_locus_poly(gf);
  const ChartEvaluator ev(gf);

  struct NodeResult {
    std::vector<CausticSample> samples;
    bool skipped = false;
    std::size_t rejected = 0;
  };
  const std::size_t n0 = grid.first.n, n1 = grid.second.n;
  std::vector<NodeResult> nodes(n0 * n1);

  parallel_for(nodes.size(), [&](std::size_t k) {
    const double a = grid.first.at(k / n1);
    const double b = grid.second.at(k % n1);
    NodeResult& res = nodes[k];
    const Poly restricted = locus.substitute(f0, Rational::from_double(a)).substitute(f1, Rational::from_double(b));
    if (restricted.is_zero()) {
      res.skipped = true;
      return;
    }
    if (restricted.is_constant()) return;
    for (const RealRoot& r : real_roots(UPoly::from_poly(restricted, solved))) {
      CausticSample s;
      s.chart_point[f0] = a;
      s.chart_point[f1] = b;
      s.chart_point[solved] = r.value;
      s.det_dpi = ev.dpi(s.chart_point);
      s.multiplicity = r.multiplicity;
      if (!(std::abs(s.det_dpi) <= tol)) {
        ++res.rejected;
        continue;
      }
      s.base_point = ev.base(s.chart_point);
      res.samples.push_back(s);
    }
  });

  CausticSweep out;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].skipped) out.skipped_slices.push_back({grid.first.at(k / n1), grid.second.at(k % n1)});
    out.rejected += nodes[k].rejected;
    out.samples.insert(out.samples.end(), nodes[k].samples.begin(), nodes[k].samples.end());
  }
  return out;
}

Poly geopotential_poly(const GeneratingFunction& gf) {
  const auto imm = immersion_polys(gf);
  const Poly& pot = gf.potential();
  switch (gf.chart()) {
    case ChartKind::ClassicalP:
      throw InvalidArgument("multivalued geopotential is undefined on the P chart");
    case ChartKind::DualT:
      return imm[kMomZ] * imm[kZ] + pot;
    case ChartKind::DualS:
      return imm[kMomX] * imm[kX] + imm[kMomY] * imm[kY] - pot;
    case ChartKind::DualR:
      return imm[kMomX] * imm[kX] + imm[kMomY] * imm[kY] + imm[kMomZ] * imm[kZ] - pot;
  }
  throw InternalError("unknown chart");
}

GeopotentialPoint multivalued_P(const GeneratingFunction& gf, const ChartPoint& pt) {
  const Poly geo = geopotential_poly(gf);
  const auto imm = immersion_polys(gf);
  const std::span<const double> q(pt);
  return {geo.eval(q), {imm[kX].eval(q), imm[kY].eval(q), imm[kZ].eval(q)}};
}

std::optional<Mat3> branch_hessian(const Jacobian6x3& jac) {
  Mat3 top, bottom;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      top(r, c) = jac[r][c];
      bottom(r, c) = jac[r + 3][c];
    }
  try {
    return bottom * top.inverse();
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

std::optional<Mat3> branch_hessian(const GeneratingFunction& gf, const ChartPoint& q) {
  return branch_hessian(immersion_jacobian(gf, q));
}

bool is_positive_definite(const Mat3& m, double tol) {
  const double m1 = m(0, 0);
  const double m2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m1 > tol && m2 > tol && m.det() > tol;
}

namespace {

// Dense solve of an n x n system (n <= 3) with partial pivoting. False if singular.
bool solve_small(std::size_t n, std::array<std::array<double, 3>, 3> a, std::array<double, 3>& b) {
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (!(std::abs(a[piv][k]) > 0.0)) return false;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * b[j];
    b[k] = s / a[k][k];
  }
  return true;
}

void finish_value(const ChartEvaluator& ev, const FiberOptions& opts, FiberValue& fv) {
  const GeneratingFunction& gf = ev.generating_function();
  fv.P = gf.chart() == ChartKind::ClassicalP ? gf.potential().eval(std::span<const double>(fv.chart_point))
                                             : ev.P(fv.chart_point);
  if (std::abs(ev.dpi(fv.chart_point)) <= opts.degenerate_tol) fv.degenerate = true;
  if (fv.degenerate) {
    fv.convex = false;
    return;
  }
  const auto h = branch_hessian(ev.jacobian(fv.chart_point));
  fv.convex = h && is_positive_definite(*h, opts.convexity_tol);
}

void solve_dual_t(const ChartEvaluator& ev, const Vec3& base, const FiberOptions& opts, BranchPoint& bp) {
  const GeneratingFunction& gf = ev.generating_function();
  // z + T_Z(x, y, Z) = 0 with x, y fixed exactly
  Poly eq = gf.potential().diff(2) + Poly::constant(gf.variables(), Rational::from_double(base[2]));
  eq = eq.substitute(std::size_t{0}, Rational::from_double(base[0]))
           .substitute(std::size_t{1}, Rational::from_double(base[1]));
  if (eq.is_zero()) throw DomainError("fiber over this base point is not isolated");
  if (eq.is_constant()) return;
  for (const RealRoot& r : real_roots(UPoly::from_poly(eq, 2))) {
    FiberValue fv;
    fv.chart_point = {base[0], base[1], r.value};
    fv.multiplicity = r.multiplicity;
    fv.degenerate = r.multiplicity > 1;
    finish_value(ev, opts, fv);
    bp.fiber.push_back(fv);
  }
}

void solve_newton(const ChartEvaluator& ev, const Vec3& base, const FiberOptions& opts, BranchPoint& bp) {
  const ChartKind chart = ev.generating_function().chart();
  // chart variables that coincide with base coordinates are fixed; the rest are unknowns
  std::vector<std::size_t> unknowns, equations;
  std::array<bool, 3> base_in_chart{false, false, false};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t slot = chart_slot(chart, i);
    if (slot < 3)
      base_in_chart[slot] = true;
    else
      unknowns.push_back(i);
  }
  for (std::size_t k = 0; k < 3; ++k)
    if (!base_in_chart[k]) equations.push_back(k);
  const std::size_t n = unknowns.size();
  const double scale = 1.0 + std::max({std::abs(base[0]), std::abs(base[1]), std::abs(base[2])});

  for (const ChartPoint& seed : opts.seeds) {
    ChartPoint q = seed;
    for (std::size_t i = 0; i < 3; ++i)
      if (chart_slot(chart, i) < 3) q[i] = base[chart_slot(chart, i)];
    bool converged = false;
    std::string reason = "iteration limit reached";
    for (int it = 0; it <= opts.max_iterations; ++it) {
      const AmbientPoint a = ev.immersion(q);
      std::array<double, 3> f{};
      double res = 0.0;
      for (std::size_t e = 0; e < n; ++e) {
        f[e] = a[equations[e]] - base[equations[e]];
        res = std::max(res, std::abs(f[e]));
      }
      if (!std::isfinite(res)) {
        reason = "non-finite residual";
        break;
      }
      if (res <= opts.newton_tol * scale) {
        converged = true;
        break;
      }
      if (it == opts.max_iterations) break;
      const Jacobian6x3 jac = ev.jacobian(q);
      std::array<std::array<double, 3>, 3> m{};
      for (std::size_t e = 0; e < n; ++e)
        for (std::size_t u = 0; u < n; ++u) m[e][u] = jac[equations[e]][unknowns[u]];
      if (!solve_small(n, m, f)) {
        reason = "singular Newton matrix";
        break;
      }
      for (std::size_t u = 0; u < n; ++u) q[unknowns[u]] -= f[u];
    }
    if (!converged) {
      bp.failures.push_back({seed, reason});
      continue;
    }
    const bool duplicate = std::any_of(bp.fiber.begin(), bp.fiber.end(), [&](const FiberValue& fv) {
      double d = 0.0, m = 1.0;
      for (std::size_t i = 0; i < 3; ++i) {
        d = std::max(d, std::abs(fv.chart_point[i] - q[i]));
        m = std::max(m, std::abs(q[i]));
      }
      return d <= 1e-8 * m;
    });
    if (duplicate) continue;
    FiberValue fv;
    fv.chart_point = q;
    finish_value(ev, opts, fv);
    bp.fiber.push_back(fv);
  }
}

}  // namespace

BranchPoint fiber_solve(const ChartEvaluator& ev, const Vec3& base, const FiberOptions& opts) {
  for (double v : base)
    if (!std::isfinite(v)) throw InvalidArgument("base point must be finite");
  BranchPoint bp;
  bp.base = base;
  switch (ev.generating_function().chart()) {
    case ChartKind::ClassicalP: {
      FiberValue fv;
      fv.chart_point = base;
      finish_value(ev, opts, fv);
      bp.fiber.push_back(fv);
      break;
    }
    case ChartKind::DualT:
      solve_dual_t(ev, base, opts, bp);
      break;
    case ChartKind::DualS:
    case ChartKind::DualR:
      solve_newton(ev, base, opts, bp);
      break;
  }
  return bp;
}

BranchPoint fiber_solve(const GeneratingFunction& gf, const Vec3& base, const FiberOptions& opts) {
  return fiber_solve(ChartEvaluator(gf), base, opts);
}

BranchChoice branch_select_convex(const BranchPoint& bp, const GeneratingFunction&) {
  BranchChoice choice;
  for (std::size_t i = 0; i < bp.fiber.size(); ++i) {
    if (!bp.fiber[i].convex) continue;
    if (choice.index)
      choice.ambiguous = true;
    else
      choice.index = i;
  }
  return choice;
}

void write_caustic_csv(std::ostream& os, const GeneratingFunction& gf, const CausticSweep& sweep) {
  const auto& vars = gf.variables();
  os << "chart_" << vars[0] << ",chart_" << vars[1] << ",chart_" << vars[2] << ",x,y,z,det_dpi,multiplicity\n";
  for (const CausticSample& s : sweep.samples) {
    for (double v : s.chart_point) os << format_double(v) << ',';
    for (double v : s.base_point) os << format_double(v) << ',';
    os << format_double(s.det_dpi) << ',' << s.multiplicity << '\n';
  }
}

void write_fiber_csv(std::ostream& os, const GeneratingFunction& gf, const std::vector<BranchPoint>& points) {
  const auto& vars = gf.variables();
  os << "x,y,z,index,chart_" << vars[0] << ",chart_" << vars[1] << ",chart_" << vars[2]
     << ",multiplicity,degenerate,P,convex,selected\n";
  for (const BranchPoint& bp : points) {
    const BranchChoice choice = branch_select_convex(bp, gf);
    for (std::size_t i = 0; i < bp.fiber.size(); ++i) {
      const FiberValue& fv = bp.fiber[i];
      for (double v : bp.base) os << format_double(v) << ',';
      os << i << ',';
      for (double v : fv.chart_point) os << format_double(v) << ',';
      os << fv.multiplicity << ',' << (fv.degenerate ? 1 : 0) << ',' << format_double(fv.P) << ','
         << (fv.convex ? 1 : 0) << ',' << (choice.index == i ? 1 : 0) << '\n';
    }
  }
}

}  // namespace lagsg
