// Scalar reference kernels. The AVX2 variants in poly_batch_avx2.cpp perform
// the same IEEE operations in the same order and must agree bit for bit.

#include <algorithm>
#include <vector>

#include "lagsg/error.hpp"
#include "lagsg/kernels.hpp"
#include "lagsg/poly.hpp"

namespace lagsg::kernels {

MonomialTable make_monomial_table(const Poly& p) {
  if (p.arity() != 3) throw InvalidArgument("batched evaluation needs a polynomial in exactly three variables");
  MonomialTable t;
  for (const auto& [e, c] : p.terms()) {
    for (auto k : e)
      if (k > 255) throw InvalidArgument("degree too large for batched evaluation");
    t.coeffs.push_back(c.to_double());
    t.exponents.push_back({static_cast<std::uint8_t>(e[0]), static_cast<std::uint8_t>(e[1]),
                           static_cast<std::uint8_t>(e[2])});
    for (auto k : e) t.max_degree = std::max(t.max_degree, static_cast<unsigned>(k));
  }
  return t;
}

namespace scalar {

void poly_eval(const MonomialTable& table, const double* c0, const double* c1, const double* c2, std::size_t n,
               double* out) {
  const std::size_t deg = table.max_degree + 1;
  std::vector<double> p0(deg), p1(deg), p2(deg);
  for (std::size_t i = 0; i < n; ++i) {
    p0[0] = p1[0] = p2[0] = 1.0;
    for (std::size_t k = 1; k < deg; ++k) {
      p0[k] = p0[k - 1] * c0[i];
      p1[k] = p1[k - 1] * c1[i];
      p2[k] = p2[k - 1] * c2[i];
    }
    double sum = 0.0;
    for (std::size_t t = 0; t < table.coeffs.size(); ++t) {
      const auto& e = table.exponents[t];
      const double term = table.coeffs[t] * p0[e[0]] * p1[e[1]] * p2[e[2]];
      sum = sum + term;
    }
    out[i] = sum;
  }
}

void sym3_det(const std::array<const double*, 6>& m, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = m[0][i], b = m[1][i], c = m[2][i], d = m[3][i], e = m[4][i], f = m[5][i];
    const double t0 = a * (d * f - e * e);
    const double t1 = b * (b * f - c * e);
    const double t2 = c * (b * e - d * c);
    out[i] = (t0 - t1) + t2;
  }
}

}  // namespace scalar
}  // namespace lagsg::kernels
