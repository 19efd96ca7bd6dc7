#include <atomic>
#include <cstdlib>

#include "ncartan/simd/kernels.hpp"

namespace ncartan::simd {

namespace {

Isa detect() {
  if (const char* force = std::getenv("NCARTAN_FORCE_SCALAR"); force && *force && *force != '0') {
    return Isa::scalar;
  }
  return cpu_supports(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(NCARTAN_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) { current().store(cpu_supports(isa) ? isa : Isa::scalar, std::memory_order_relaxed); }

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void norm_row(std::int64_t a1_sq, std::int64_t eps, std::int32_t modulus, std::span<std::int32_t> out) {
#if defined(NCARTAN_HAVE_AVX2)
  if (active_isa() == Isa::avx2 && modulus <= kNormRowMaxModulus) {
    avx2::norm_row(a1_sq, eps, modulus, out);
    return;
  }
#endif
  scalar::norm_row(a1_sq, eps, modulus, out);
}

void circulant_log_abs_eigenvalues(std::span<const double> coeffs, std::span<double> out) {
#if defined(NCARTAN_HAVE_AVX2)
  if (active_isa() == Isa::avx2) {
    avx2::circulant_log_abs_eigenvalues(coeffs, out);
    return;
  }
#endif
  scalar::circulant_log_abs_eigenvalues(coeffs, out);
}

}  // namespace ncartan::simd
