#include "lagsg/characteristics.hpp"

#include <cmath>

#include "lagsg/error.hpp"
#include "lagsg/format.hpp"
#include "lagsg/ma_core.hpp"
#include "lagsg/parallel.hpp"

namespace lagsg {

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::MaxSteps:
      return "MaxSteps";
    case Termination::ParabolicBoundary:
      return "ParabolicBoundary";
    case Termination::DomainExit:
      return "DomainExit";
    case Termination::Diverged:
      return "Diverged";
  }
  return "unknown";
}

namespace {

Sym3 inverse_metric(const MetricField& field, const ChartPoint& q) {
  const Sym3 h = field.metric(q);
  try {
    return h.inverse();
  } catch (const DomainError&) {
    throw DomainError("metric is singular at this point (parabolic)");
  }
}

bool finite_state(const BicharState& s) {
  for (int i = 0; i < 3; ++i)
    if (!std::isfinite(s.q[i]) || !std::isfinite(s.p[i])) return false;
  return std::isfinite(s.s);
}

BicharState advance(const BicharState& s, const PhaseVelocity& v, double dt) {
  BicharState out = s;
  for (int i = 0; i < 3; ++i) {
    out.q[i] = s.q[i] + dt * v.qdot[i];
    out.p[i] = s.p[i] + dt * v.pdot[i];
  }
  out.s = s.s + dt;
  return out;
}

}  // namespace

double hamiltonian(const MetricField& field, const BicharState& state) {
  const Sym3 hinv = inverse_metric(field, state.q);
  return hinv.quadratic_form(state.p);
}

double hamiltonian(const GeneratingFunction& gf, const BicharState& state) {
  return hamiltonian(MetricField(gf), state);
}

std::vector<Vec3> null_project(const MetricField& field, const ChartPoint& q, std::array<double, 2> fixed,
                               std::size_t free_index) {
  if (free_index > 2) throw InvalidArgument("free momentum index out of range");
  const Sym3 hinv = inverse_metric(field, q);
  Vec3 base{};
  for (std::size_t i = 0, k = 0; i < 3; ++i)
    if (i != free_index) base[i] = fixed[k++];
  // H(t) = a t^2 + b t + c
  const std::size_t f = free_index;
  const double a = hinv(f, f);
  double b = 0.0;
  for (std::size_t j = 0; j < 3; ++j)
    if (j != f) b += 2 * hinv(f, j) * base[j];
  const double c = hinv.quadratic_form(base);
  auto with = [&](double t) {
    Vec3 p = base;
    p[f] = t;
    return p;
  };
  const double scale = hinv.max_abs();
  if (std::abs(a) <= 1e-14 * scale) {
    if (std::abs(b) <= 1e-14 * scale) {
      if (std::abs(c) <= 1e-14 * scale) return {with(0.0)};
      return {};
    }
    return {with(-c / b)};
  }
  const double disc = b * b - 4 * a * c;
  const double mag = b * b + std::abs(4 * a * c);
  if (disc < -1e-14 * mag) return {};
  if (disc <= 1e-14 * mag) return {with(-b / (2 * a))};
  const double sq = std::sqrt(disc);
  // stable pair
  const double qv = -0.5 * (b + std::copysign(sq, b));
  double t1 = qv / a;
  double t2 = qv != 0.0 ? c / qv : -t1;
  if (t1 > t2) std::swap(t1, t2);
  return {with(t1), with(t2)};
}

PhaseVelocity ham_rhs(const MetricField& field, const BicharState& state) {
  const Sym3 hinv = inverse_metric(field, state.q);
  const Vec3 w = hinv * state.p;
  PhaseVelocity v;
  for (std::size_t k = 0; k < 3; ++k) {
    v.qdot[k] = 2 * w[k];
    v.pdot[k] = field.metric_derivative(state.q, k).quadratic_form(w);
  }
  return v;
}

PhaseVelocity ham_rhs(const GeneratingFunction& gf, const BicharState& state) {
  return ham_rhs(MetricField(gf), state);
}

bool has_fold_normal_form(const MetricField& field) {
  const GeneratingFunction& gf = field.generating_function();
  if (gf.chart() != ChartKind::DualT) return false;
  const SymPoly3& h = field.metric_polys();
  if (!h[Sym3::slot(0, 1)].is_zero() || !h[Sym3::slot(0, 2)].is_zero() || !h[Sym3::slot(1, 2)].is_zero())
    return false;
  const Poly& hxx = h[Sym3::slot(0, 0)];
  const Poly& hzz = h[Sym3::slot(2, 2)];
  if (!(hxx == hzz) || !h[Sym3::slot(1, 1)].is_constant() || h[Sym3::slot(1, 1)].is_zero()) return false;
  // hxx = c Z
  if (hxx.terms().size() != 1) return false;
  const auto& [e, c] = *hxx.terms().begin();
  return e == Exponents{0, 0, 1} && !c.is_zero();
}

Trace trace_bicharacteristic(const MetricField& field, const BicharState& initial, const TraceOptions& opts) {
  if (!(opts.step > 0.0) || !std::isfinite(opts.step)) throw InvalidArgument("trace step must be positive");
  if (!(opts.stop_tol >= 0.0)) throw InvalidArgument("stop tolerance must be non-negative");
  if (!finite_state(initial)) throw InvalidArgument("initial state must be finite");
  const double H0 = hamiltonian(field, initial);
  if (!(std::abs(H0) <= opts.null_tol))
    throw DomainError("initial state is not null: H = " + format_double(H0));

  const bool conserved = has_fold_normal_form(field);
  Trace tr;
  auto record = [&](const BicharState& s, const Sym3& h, double H) {
    tr.states.push_back(s);
    tr.H.push_back(H);
    tr.det_h.push_back(h.det());
    if (conserved) {
      const Vec3 w = h.inverse() * s.p;  // qdot = 2w
      tr.conserved.push_back({2 * w[0] * s.q[2], 2 * w[1]});
    }
  };

  const Sym3 h0 = field.metric(initial.q);
  const double det0 = std::abs(h0.det());
  const double stop_tol = opts.stop_tol > 0.0 ? opts.stop_tol : 1e-6 * det0;
  const SignatureLabel start_label = classify(h0).label;
  record(initial, h0, H0);

  BicharState cur = initial;
  const double dt = opts.step;
  for (std::size_t step = 0; step < opts.max_steps; ++step) {
    BicharState next;
    try {
      const PhaseVelocity k1 = ham_rhs(field, cur);
      const PhaseVelocity k2 = ham_rhs(field, advance(cur, k1, dt / 2));
      const PhaseVelocity k3 = ham_rhs(field, advance(cur, k2, dt / 2));
      const PhaseVelocity k4 = ham_rhs(field, advance(cur, k3, dt));
      next = cur;
      for (int i = 0; i < 3; ++i) {
        next.q[i] = cur.q[i] + dt / 6 * (k1.qdot[i] + 2 * k2.qdot[i] + 2 * k3.qdot[i] + k4.qdot[i]);
        next.p[i] = cur.p[i] + dt / 6 * (k1.pdot[i] + 2 * k2.pdot[i] + 2 * k3.pdot[i] + k4.pdot[i]);
      }
      next.s = initial.s + static_cast<double>(step + 1) * dt;
    } catch (const DomainError&) {
      tr.termination = Termination::ParabolicBoundary;
      return tr;
    }
    if (!finite_state(next)) {
      tr.termination = Termination::Diverged;
      return tr;
    }
    for (int i = 0; i < 3; ++i)
      if (next.q[i] < opts.box_min[i] || next.q[i] > opts.box_max[i]) {
        tr.termination = Termination::DomainExit;
        return tr;
      }
    const Sym3 h = field.metric(next.q);
    if (!(std::abs(h.det()) >= stop_tol) || classify(h).label != start_label) {
      tr.termination = Termination::ParabolicBoundary;
      return tr;
    }
    double H;
    try {
      H = h.inverse().quadratic_form(next.p);
    } catch (const DomainError&) {
      tr.termination = Termination::ParabolicBoundary;
      return tr;
    }
    if (!std::isfinite(H)) {
      tr.termination = Termination::Diverged;
      return tr;
    }
    record(next, h, H);
    cur = next;
  }
  tr.termination = Termination::MaxSteps;
  return tr;
}

std::vector<Trace> trace_sweep(const MetricField& field, const std::vector<BicharState>& initials,
                               const TraceOptions& opts) {
  std::vector<Trace> out(initials.size());
  parallel_for(initials.size(), [&](std::size_t i) { out[i] = trace_bicharacteristic(field, initials[i], opts); });
  return out;
}

double eikonal_residual_gradient(const MetricField& field, const ChartPoint& pt, const Vec3& grad) {
  return inverse_metric(field, pt).quadratic_form(grad);
}

double eikonal_residual(const GeneratingFunction& gf, const Poly& F, const ChartPoint& pt) {
  const Poly f = F.with_variables(gf.variables());
  const std::span<const double> q(pt);
  const Vec3 grad{f.diff(0).eval(q), f.diff(1).eval(q), f.diff(2).eval(q)};
  const Sym3 h = pullback_metric(gf, pt);
  try {
    return h.inverse().quadratic_form(grad);
  } catch (const DomainError&) {
    throw DomainError("metric is singular at this point (parabolic)");
  }
}

NullGeodesicDisplacement analytic_null_geodesic(double C1, double C2, double Z0, double Z, int sigma) {
  if (C2 == 0.0) throw DomainError("null geodesic oracle needs C2 != 0");
  if (sigma != 1 && sigma != -1) throw InvalidArgument("sigma must be +1 or -1");
  const double u = C2 * C2 * Z - C1 * C1;
  const double u0 = C2 * C2 * Z0 - C1 * C1;
  if (u < 0.0 || u0 < 0.0) throw DomainError("null geodesic oracle needs C2^2 Z >= C1^2 at both ends");
  const double r = std::sqrt(u), r0 = std::sqrt(u0);
  const double c22 = C2 * C2;
  NullGeodesicDisplacement d;
  d.s = sigma * 2 * (r * (2 * C1 * C1 + c22 * Z) - r0 * (2 * C1 * C1 + c22 * Z0)) / (3 * c22 * c22);
  d.dx = sigma * 2 * C1 * (r - r0) / c22;
  d.dy = C2 * d.s;
  return d;
}

Rational null_geodesic_dy_squared_from_turning(const Rational& C1, const Rational& C2, const Rational& Z) {
  if (C2.is_zero()) throw DomainError("null geodesic oracle needs C2 != 0");
  const Rational c11 = C1 * C1, c22 = C2 * C2;
  const Rational u = c22 * Z - c11;
  if (u.sign() < 0) throw DomainError("null geodesic oracle needs C2^2 Z >= C1^2");
  const Rational w = Rational(2) * c11 + c22 * Z;
  return Rational(4) * w * w * u / (Rational(9) * pow(c22, 3));
}

BicharState fold_null_state(double C1, double C2, double Z0, int sigma, double x0, double y0) {
  if (sigma != 1 && sigma != -1) throw InvalidArgument("sigma must be +1 or -1");
  const double u0 = C2 * C2 * Z0 - C1 * C1;
  if (!(Z0 > 0.0) || u0 < 0.0) throw DomainError("null start needs Z0 > 0 and C2^2 Z0 >= C1^2");
  BicharState s;
  s.q = {x0, y0, Z0};
  s.p = {-C1, C2, -sigma * std::sqrt(u0)};
  return s;
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
  const bool conserved = !trace.conserved.empty();
  os << "s,q1,q2,q3,p1,p2,p3,H,det_h";
  if (conserved) os << ",xdot_Z,ydot";
  os << '\n';
  for (std::size_t i = 0; i < trace.states.size(); ++i) {
    const BicharState& st = trace.states[i];
    os << format_double(st.s);
    for (double v : st.q) os << ',' << format_double(v);
    for (double v : st.p) os << ',' << format_double(v);
    os << ',' << format_double(trace.H[i]) << ',' << format_double(trace.det_h[i]);
    if (conserved) os << ',' << format_double(trace.conserved[i][0]) << ',' << format_double(trace.conserved[i][1]);
    os << '\n';
  }
  os << "# termination: " << termination_name(trace.termination) << '\n';
}

}  // namespace lagsg
