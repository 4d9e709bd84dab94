#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace lagsg {
class Poly;
}

namespace lagsg::kernels {

// Flattened three-variable polynomial for batched evaluation. Terms keep the
// Poly's graded-lex order so every backend sums in the same sequence.
struct MonomialTable {
  std::vector<double> coeffs;
  std::vector<std::array<std::uint8_t, 3>> exponents;
  unsigned max_degree = 0;
};

// Throws InvalidArgument unless p has exactly three variables and degree < 256 in each.
MonomialTable make_monomial_table(const Poly& p);

// Evaluates `table` at n points given as three coordinate arrays.
using PolyEvalFn = void (*)(const MonomialTable& table, const double* c0, const double* c1, const double* c2,
                            std::size_t n, double* out);
// Determinants of n symmetric 3x3 matrices given as six entry arrays (xx, xy, xz, yy, yz, zz).
using Sym3DetFn = void (*)(const std::array<const double*, 6>& entries, std::size_t n, double* out);

enum class Backend { Scalar, Avx2 };

struct KernelSet {
  Backend backend;
  std::string_view name;
  PolyEvalFn poly_eval;
  Sym3DetFn sym3_det;
};

// Reference implementation; always available.
const KernelSet& scalar_kernels();
// nullptr when the AVX2 variant was not compiled in.
const KernelSet* avx2_kernels();

bool cpu_supports_avx2();
// Fastest available set unless overridden by select_backend().
const KernelSet& active_kernels();
// Returns false (and changes nothing) when the backend is unavailable on this build/CPU.
bool select_backend(Backend backend);

namespace scalar {
void poly_eval(const MonomialTable& table, const double* c0, const double* c1, const double* c2, std::size_t n,
               double* out);
void sym3_det(const std::array<const double*, 6>& entries, std::size_t n, double* out);
}  // namespace scalar

#if defined(LAGSG_HAVE_AVX2)
namespace avx2 {
void poly_eval(const MonomialTable& table, const double* c0, const double* c1, const double* c2, std::size_t n,
               double* out);
void sym3_det(const std::array<const double*, 6>& entries, std::size_t n, double* out);
}  // namespace avx2
#endif

}  // namespace lagsg::kernels
