// AVX2 variants, four points per lane group. Compiled with -mavx2 (no FMA)
// and only called after a runtime CPU check.

#include <immintrin.h>

#include <vector>

#include "lagsg/kernels.hpp"

namespace lagsg::kernels::avx2 {

void poly_eval(const MonomialTable& table, const double* c0, const double* c1, const double* c2, std::size_t n,
               double* out) {
  const std::size_t deg = table.max_degree + 1;
  const std::size_t nterms = table.coeffs.size();
  // Power tables, deg x 4 lanes per coordinate.
  std::vector<__m256d> p0(deg), p1(deg), p2(deg);
  const __m256d one = _mm256_set1_pd(1.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(c0 + i);
    const __m256d x1 = _mm256_loadu_pd(c1 + i);
    const __m256d x2 = _mm256_loadu_pd(c2 + i);
    p0[0] = p1[0] = p2[0] = one;
    for (std::size_t k = 1; k < deg; ++k) {
      p0[k] = _mm256_mul_pd(p0[k - 1], x0);
      p1[k] = _mm256_mul_pd(p1[k - 1], x1);
      p2[k] = _mm256_mul_pd(p2[k - 1], x2);
    }
    __m256d sum = _mm256_setzero_pd();
    for (std::size_t t = 0; t < nterms; ++t) {
      const auto& e = table.exponents[t];
      __m256d term = _mm256_mul_pd(_mm256_set1_pd(table.coeffs[t]), p0[e[0]]);
      term = _mm256_mul_pd(term, p1[e[1]]);
      term = _mm256_mul_pd(term, p2[e[2]]);
      sum = _mm256_add_pd(sum, term);
    }
    _mm256_storeu_pd(out + i, sum);
  }
  if (i < n) scalar::poly_eval(table, c0 + i, c1 + i, c2 + i, n - i, out + i);
}

void sym3_det(const std::array<const double*, 6>& m, std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(m[0] + i);
    const __m256d b = _mm256_loadu_pd(m[1] + i);
    const __m256d c = _mm256_loadu_pd(m[2] + i);
    const __m256d d = _mm256_loadu_pd(m[3] + i);
    const __m256d e = _mm256_loadu_pd(m[4] + i);
    const __m256d f = _mm256_loadu_pd(m[5] + i);
    const __m256d t0 = _mm256_mul_pd(a, _mm256_sub_pd(_mm256_mul_pd(d, f), _mm256_mul_pd(e, e)));
    const __m256d t1 = _mm256_mul_pd(b, _mm256_sub_pd(_mm256_mul_pd(b, f), _mm256_mul_pd(c, e)));
    const __m256d t2 = _mm256_mul_pd(c, _mm256_sub_pd(_mm256_mul_pd(b, e), _mm256_mul_pd(d, c)));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_sub_pd(t0, t1), t2));
  }
  if (i < n) {
    std::array<const double*, 6> tail;
    for (std::size_t k = 0; k < 6; ++k) tail[k] = m[k] + i;
    scalar::sym3_det(tail, n - i, out + i);
  }
}

}  // namespace lagsg::kernels::avx2
