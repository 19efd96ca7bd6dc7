#pragma once

// Data-parallel inner loops with a scalar reference and an AVX2 variant.
// The public entry points dispatch at runtime; the per-ISA namespaces are
// exposed so tests can compare them directly.

#include <cstdint>
#include <span>

namespace ncartan::simd {

enum class Isa { scalar, avx2 };

/// ISA used by the dispatching entry points. Detected once; honours the
/// NCARTAN_FORCE_SCALAR environment variable.
Isa active_isa();
/// Overrides detection (tests and benchmarks). Requesting an ISA the CPU
/// lacks falls back to scalar.
void set_isa(Isa isa);
bool cpu_supports(Isa isa);
const char* isa_name(Isa isa);

// Largest modulus accepted by norm_row (intermediates must stay exact in
// double precision).
inline constexpr std::int32_t kNormRowMaxModulus = 1 << 24;

/// out[x] = (a1_sq - eps * x^2) mod modulus for x = 0 .. out.size()-1.
/// a1_sq and eps must already be reduced into [0, modulus).
void norm_row(std::int64_t a1_sq, std::int64_t eps, std::int32_t modulus, std::span<std::int32_t> out);

/// out[m] = log |sum_j coeffs[j] * exp(2 pi i j m / n)|, n = coeffs.size().
void circulant_log_abs_eigenvalues(std::span<const double> coeffs, std::span<double> out);

namespace scalar {
void norm_row(std::int64_t a1_sq, std::int64_t eps, std::int32_t modulus, std::span<std::int32_t> out);
void circulant_log_abs_eigenvalues(std::span<const double> coeffs, std::span<double> out);
}  // namespace scalar

#if defined(NCARTAN_HAVE_AVX2)
namespace avx2 {
void norm_row(std::int64_t a1_sq, std::int64_t eps, std::int32_t modulus, std::span<std::int32_t> out);
void circulant_log_abs_eigenvalues(std::span<const double> coeffs, std::span<double> out);
}  // namespace avx2
#endif

}  // namespace ncartan::simd
