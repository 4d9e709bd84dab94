#include <atomic>

#include "lagsg/kernels.hpp"

namespace lagsg::kernels {
namespace {

const KernelSet kScalar{Backend::Scalar, "scalar", &scalar::poly_eval, &scalar::sym3_det};
#if defined(LAGSG_HAVE_AVX2)
const KernelSet kAvx2{Backend::Avx2, "avx2", &avx2::poly_eval, &avx2::sym3_det};
#endif

const KernelSet* best_available() {
  if (const KernelSet* k = avx2_kernels(); k != nullptr && cpu_supports_avx2()) return k;
  return &kScalar;
}

std::atomic<const KernelSet*>& active_slot() {
  static std::atomic<const KernelSet*> slot{best_available()};
  return slot;
}

}  // namespace

const KernelSet& scalar_kernels() { return kScalar; }

const KernelSet* avx2_kernels() {
#if defined(LAGSG_HAVE_AVX2)
  return &kAvx2;
#else
  return nullptr;
#endif
}

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelSet& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

bool select_backend(Backend backend) {
  if (backend == Backend::Scalar) {
    active_slot().store(&kScalar, std::memory_order_release);
    return true;
  }
  const KernelSet* k = avx2_kernels();
  if (k == nullptr || !cpu_supports_avx2()) return false;
  active_slot().store(k, std::memory_order_release);
  return true;
}

}  // namespace lagsg::kernels
