#include "lagsg/metric_field.hpp"

#include "lagsg/error.hpp"

namespace lagsg {

Poly projection_det_poly(const GeneratingFunction& gf) {
  const PolyJacobian jac = immersion_jacobian_polys(gf);
  std::array<std::array<Poly, 3>, 3> top;
  for (std::size_t r = 0; r < 3; ++r) top[r] = jac[r];
  return det_poly(top);
}

MetricField::MetricField(GeneratingFunction gf)
    : gf_(std::move(gf)), h_(pullback_metric_polys(gf_)), dpi_(lagsg::projection_det_poly(gf_)) {
  for (std::size_t k = 0; k < 6; ++k) {
    h_eval_[k] = HornerPoly(h_[k]);
    h_table_[k] = kernels::make_monomial_table(h_[k]);
    for (std::size_t v = 0; v < 3; ++v) {
      dh_[v][k] = h_[k].diff(v);
      dh_eval_[v][k] = HornerPoly(dh_[v][k]);
    }
  }
  dpi_eval_ = HornerPoly(dpi_);
  dpi_table_ = kernels::make_monomial_table(dpi_);
}

Sym3 MetricField::metric(const ChartPoint& q) const {
  Sym3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) out.set(i, j, h_eval_[Sym3::slot(i, j)](q));
  return out;
}

Sym3 MetricField::metric_derivative(const ChartPoint& q, std::size_t var) const {
  if (var >= 3) throw InvalidArgument("chart variable index out of range");
  Sym3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) out.set(i, j, dh_eval_[var][Sym3::slot(i, j)](q));
  return out;
}

double MetricField::projection_det(const ChartPoint& q) const { return dpi_eval_(q); }

MetricField::Batch MetricField::evaluate_batch(std::span<const double> c0, std::span<const double> c1,
                                               std::span<const double> c2,
                                               const kernels::KernelSet& kernels) const {
  const std::size_t n = c0.size();
  if (c1.size() != n || c2.size() != n) throw InvalidArgument("coordinate arrays differ in length");
  Batch b;
  std::array<const double*, 6> ptrs{};
  for (std::size_t k = 0; k < 6; ++k) {
    b.entries[k].resize(n);
    kernels.poly_eval(h_table_[k], c0.data(), c1.data(), c2.data(), n, b.entries[k].data());
    ptrs[k] = b.entries[k].data();
  }
  b.det.resize(n);
  kernels.sym3_det(ptrs, n, b.det.data());
  b.projection_det.resize(n);
  kernels.poly_eval(dpi_table_, c0.data(), c1.data(), c2.data(), n, b.projection_det.data());
  return b;
}

}  // namespace lagsg
