#include <cmath>
#include <numbers>
#include <vector>

#include <immintrin.h>

#include "ncartan/simd/kernels.hpp"

namespace ncartan::simd::avx2 {

namespace {

// r in [0, m) for 0 <= x < 2^53, exact: the quotient estimate may be off by
// one, which the two conditional corrections absorb.
inline __m256d reduce_pd(__m256d x, __m256d m, __m256d inv_m) {
  __m256d q = _mm256_floor_pd(_mm256_mul_pd(x, inv_m));
  __m256d r = _mm256_fnmadd_pd(q, m, x);
  r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ), m));
  r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, m, _CMP_GE_OQ), m));
  return r;
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

void norm_row(std::int64_t a1_sq, std::int64_t eps, std::int32_t modulus, std::span<std::int32_t> out) {
  const std::size_t n = out.size();
  const __m256d m = _mm256_set1_pd(static_cast<double>(modulus));
  const __m256d inv_m = _mm256_set1_pd(1.0 / static_cast<double>(modulus));
  const __m256d e = _mm256_set1_pd(static_cast<double>(eps));
  const __m256d base = _mm256_set1_pd(static_cast<double>(a1_sq));
  const __m256d four = _mm256_set1_pd(4.0);
  __m256d x = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xx = reduce_pd(_mm256_mul_pd(x, x), m, inv_m);
    __m256d t = reduce_pd(_mm256_mul_pd(e, xx), m, inv_m);
    __m256d r = _mm256_sub_pd(base, t);
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ), m));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + i), _mm256_cvttpd_epi32(r));
    x = _mm256_add_pd(x, four);
  }
  for (; i < n; ++i) {
    const std::int64_t xx = static_cast<std::int64_t>(i) * static_cast<std::int64_t>(i) % modulus;
    std::int64_t r = (a1_sq - eps * xx % modulus) % modulus;
    out[i] = static_cast<std::int32_t>(r < 0 ? r + modulus : r);
  }
}

void circulant_log_abs_eigenvalues(std::span<const double> coeffs, std::span<double> out) {
  const std::size_t n = coeffs.size();
  std::vector<double> cos_tab(n), sin_tab(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n);
    cos_tab[t] = std::cos(angle);
    sin_tab[t] = std::sin(angle);
  }
  const std::int32_t nn = static_cast<std::int32_t>(n);
  const __m128i vn = _mm_set1_epi32(nn);
  const __m128i vn_minus_1 = _mm_set1_epi32(nn - 1);

  for (std::size_t mi = 0; mi < out.size(); ++mi) {
    const std::int32_t m = static_cast<std::int32_t>(mi % n);
    const std::int32_t step = static_cast<std::int32_t>((4 * static_cast<std::int64_t>(m)) % nn);
    __m128i idx = _mm_setr_epi32(0, static_cast<std::int32_t>(static_cast<std::int64_t>(m) % nn),
                                 static_cast<std::int32_t>(2 * static_cast<std::int64_t>(m) % nn),
                                 static_cast<std::int32_t>(3 * static_cast<std::int64_t>(m) % nn));
    const __m128i vstep = _mm_set1_epi32(step);
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const __m256d c = _mm256_loadu_pd(coeffs.data() + j);
      re = _mm256_fmadd_pd(c, _mm256_i32gather_pd(cos_tab.data(), idx, 8), re);
      im = _mm256_fmadd_pd(c, _mm256_i32gather_pd(sin_tab.data(), idx, 8), im);
      idx = _mm_add_epi32(idx, vstep);
      idx = _mm_sub_epi32(idx, _mm_and_si128(_mm_cmpgt_epi32(idx, vn_minus_1), vn));
    }
    double sre = hsum(re), sim = hsum(im);
    for (; j < n; ++j) {
      const std::size_t t = (j * static_cast<std::size_t>(m)) % n;
      sre += coeffs[j] * cos_tab[t];
      sim += coeffs[j] * sin_tab[t];
    }
    out[mi] = std::log(std::hypot(sre, sim));
  }
}

}  // namespace ncartan::simd::avx2
