#pragma once

#include <array>
#include <span>
#include <vector>

#include "lagsg/horner.hpp"
#include "lagsg/kernels.hpp"
#include "lagsg/ma_core.hpp"

namespace lagsg {

// Pull-back metric of a generating function, prepared for repeated numeric
// evaluation: exact entry polynomials, their exact first derivatives, and
// compiled evaluators. Immutable after construction; safe to share across threads.
class MetricField {
 public:
  explicit MetricField(GeneratingFunction gf);

  const GeneratingFunction& generating_function() const { return gf_; }
  const SymPoly3& metric_polys() const { return h_; }
  const SymPoly3& derivative_polys(std::size_t var) const { return dh_[var]; }
  // det of d(x, y, z)/d(chart variables): the singular-locus polynomial.
  const Poly& projection_det_poly() const { return dpi_; }

  Sym3 metric(const ChartPoint& q) const;
  Sym3 metric_derivative(const ChartPoint& q, std::size_t var) const;
  double projection_det(const ChartPoint& q) const;

  // Batched evaluation over n points (coordinate arrays), using the active kernel set.
  struct Batch {
    std::array<std::vector<double>, 6> entries;  // Sym3 slot order
    std::vector<double> det;
    std::vector<double> projection_det;
  };
  Batch evaluate_batch(std::span<const double> c0, std::span<const double> c1, std::span<const double> c2,
                       const kernels::KernelSet& kernels = kernels::active_kernels()) const;

 private:
  GeneratingFunction gf_;
  SymPoly3 h_;
  std::array<SymPoly3, 3> dh_;
  Poly dpi_;
  std::array<HornerPoly, 6> h_eval_;
  std::array<std::array<HornerPoly, 6>, 3> dh_eval_;
  HornerPoly dpi_eval_;
  std::array<kernels::MonomialTable, 6> h_table_;
  kernels::MonomialTable dpi_table_;
};

// Symbolic projection determinant det d(x, y, z)/dq for any chart.
Poly projection_det_poly(const GeneratingFunction& gf);

}  // namespace lagsg
