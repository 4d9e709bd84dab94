#include "lagsg/sg.hpp"

#include <cmath>

#include "lagsg/error.hpp"
#include "lagsg/format.hpp"
#include "lagsg/ma_core.hpp"
#include "lagsg/parallel.hpp"

namespace lagsg {

namespace {

enum class Outcome { Ok, NoPreimage, Degenerate, NoBranch };

struct Attempt {
  Outcome outcome = Outcome::Ok;
  SGState state;
  std::string message;
};

Attempt try_branch_state(const ChartEvaluator& ev, const Vec3& base, const BranchRequest& branch,
                         const EpsilonChoice& eps, const FiberOptions& fiber) {
  const GeneratingFunction& gf = ev.generating_function();
  Attempt a;
  const BranchPoint bp = fiber_solve(ev, base, fiber);
  if (bp.fiber.empty()) {
    a.outcome = Outcome::NoPreimage;
    a.message = "base point has no preimage on the solution (outside its domain)";
    return a;
  }
  std::size_t idx = 0;
  if (branch.index) {
    if (*branch.index >= bp.fiber.size()) {
      a.outcome = Outcome::NoBranch;
      a.message = "branch index " + std::to_string(*branch.index) + " out of range (" +
                  std::to_string(bp.fiber.size()) + " preimages)";
      return a;
    }
    idx = *branch.index;
  } else {
    const BranchChoice c = branch_select_convex(bp, gf);
    if (!c.index) {
      bool all_degenerate = true;
      for (const auto& fv : bp.fiber) all_degenerate = all_degenerate && fv.degenerate;
      a.outcome = all_degenerate ? Outcome::Degenerate : Outcome::NoBranch;
      a.message = all_degenerate ? "base point lies on the caustic" : "no convex branch over this base point";
      return a;
    }
    idx = *c.index;
  }
  const FiberValue& fv = bp.fiber[idx];
  const auto hess = fv.degenerate ? std::nullopt : branch_hessian(ev.jacobian(fv.chart_point));
  if (!hess) {
    a.outcome = Outcome::Degenerate;
    a.message = "selected preimage is degenerate (caustic point)";
    return a;
  }

  SGState& s = a.state;
  s.base = base;
  s.chart_point = fv.chart_point;
  s.P = fv.P;
  const AmbientPoint amb = ev.immersion(fv.chart_point);
  s.M = amb[kMomX];
  s.N = amb[kMomY];
  s.theta_eps = amb[kMomZ];
  const double qg = eps.q_g.to_double();
  s.u_g = qg * (base[1] - s.N);
  s.v_g = qg * (s.M - base[0]);
  s.hessian = *hess;
  const Signature sig = classify(gf, fv.chart_point);
  s.label = sig.label == SignatureLabel::Elliptic     ? BranchLabel::Elliptic
            : sig.label == SignatureLabel::Parabolic ? BranchLabel::Degenerate
                                                     : BranchLabel::Hyperbolic;
  s.nonunit_eps_q = !(gf.eps_q() == Rational(1));
  return a;
}

}  // namespace

EpsilonChoice EpsilonChoice::from_eps_q(const Rational& eps_q, const Rational& epsilon) {
  if (epsilon.sign() <= 0) throw DomainError("epsilon must be positive");
  if (eps_q.sign() <= 0) throw DomainError("eps_q must be positive");
  return {epsilon, eps_q / epsilon};
}

std::string_view branch_label_name(BranchLabel l) {
  switch (l) {
    case BranchLabel::Elliptic: return "elliptic";
    case BranchLabel::Hyperbolic: return "hyperbolic";
    case BranchLabel::Degenerate: return "degenerate";
  }
  return "degenerate";
}

std::string_view domain_flag_name(DomainFlag f) {
  switch (f) {
    case DomainFlag::Inside: return "in";
    case DomainFlag::Outside: return "out";
    case DomainFlag::Caustic: return "caustic";
  }
  return "out";
}

SGState branch_state(const GeneratingFunction& gf, const Vec3& base, const BranchRequest& branch,
                     const EpsilonChoice& eps, const FiberOptions& fiber) {
  const ChartEvaluator ev(gf);
  Attempt a = try_branch_state(ev, base, branch, eps, fiber);
  if (a.outcome != Outcome::Ok) throw DomainError(a.message);
  return a.state;
}

Velocity velocity_reconstruct(const SGState& state, const GeneratingFunction& gf, const EpsilonChoice& eps) {
  const auto hess = branch_hessian(gf, state.chart_point);
  if (!hess) throw DomainError("singular velocity system at a degenerate point");
  Mat3 A = *hess;
  const double inv_eps = 1.0 / eps.epsilon.to_double();
  for (std::size_t j = 0; j < 3; ++j) A(2, j) *= inv_eps;
  const double det = A.det();
  if (!(std::abs(det) > 1e-14 * std::pow(std::max(1.0, A.max_abs()), 3)))
    throw DomainError("singular velocity system");
  const Vec3 rhs{state.u_g, state.v_g, 0.0};
  const Mat3 adj = A.adj();
  Vec3 sol = adj * rhs;
  for (double& c : sol) c /= det;
  Velocity v{sol[0], sol[1], sol[2], 0.0};
  const Vec3 back = A * sol;
  for (std::size_t i = 0; i < 3; ++i) v.residual = std::max(v.residual, std::abs(back[i] - rhs[i]));
  return v;
}

std::vector<WindRow> wind_field_sweep(const GeneratingFunction& gf, const BranchRequest& branch,
                                      const WindSection& section, const EpsilonChoice& eps,
                                      const FiberOptions& fiber) {
  validate(section.first, "section.first");
  validate(section.second, "section.second");
  if (section.axes[0] > 2 || section.axes[1] > 2 || section.axes[0] == section.axes[1])
    throw InvalidArgument("section axes must be two distinct base coordinates");
  std::size_t fixed_axis = 0;
  while (fixed_axis == section.axes[0] || fixed_axis == section.axes[1]) ++fixed_axis;

  const ChartEvaluator ev(gf);
  const std::size_t n1 = section.first.n, n2 = section.second.n;
  std::vector<WindRow> rows(n1 * n2);
  parallel_for(rows.size(), [&](std::size_t k) {
    WindRow& row = rows[k];
    row.base[section.axes[0]] = section.first.at(k / n2);
    row.base[section.axes[1]] = section.second.at(k % n2);
    row.base[fixed_axis] = section.fixed;
    Attempt a = try_branch_state(ev, row.base, branch, eps, fiber);
    if (a.outcome == Outcome::Degenerate) {
      row.flag = DomainFlag::Caustic;
      return;
    }
    if (a.outcome != Outcome::Ok) {
      row.flag = DomainFlag::Outside;
      return;
    }
    try {
      const Velocity v = velocity_reconstruct(a.state, gf, eps);
      a.state.u = v.u;
      a.state.v = v.v;
      a.state.w = v.w;
      row.residual = v.residual;
      row.speed = std::sqrt(v.u * v.u + v.v * v.v + v.w * v.w);
      row.state = a.state;
      row.flag = DomainFlag::Inside;
    } catch (const DomainError&) {
      row.flag = DomainFlag::Caustic;
    }
  });
  return rows;
}

void write_wind_csv(std::ostream& os, const std::vector<WindRow>& rows) {
  os << "x,y,z,domain_flag,P,M,N,theta_eps,u_g,v_g,u,v,w,|v|\n";
  for (const WindRow& r : rows) {
    for (double c : r.base) os << format_double(c) << ',';
    os << domain_flag_name(r.flag);
    if (r.flag != DomainFlag::Inside) {
      os << ",,,,,,,,,,\n";
      continue;
    }
    const SGState& s = r.state;
    for (double c : {s.P, s.M, s.N, s.theta_eps, s.u_g, s.v_g, s.u, s.v, s.w, r.speed}) os << ',' << format_double(c);
    os << '\n';
  }
}

}  // namespace lagsg
