#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ncartan/simd/kernels.hpp"

namespace ncartan::simd::scalar {

void norm_row(std::int64_t a1_sq, std::int64_t eps, std::int32_t modulus, std::span<std::int32_t> out) {
  const std::int64_t m = modulus;
  for (std::size_t x = 0; x < out.size(); ++x) {
    const std::int64_t xx = static_cast<std::int64_t>(x) * static_cast<std::int64_t>(x) % m;
    std::int64_t r = (a1_sq - eps * xx % m) % m;
    if (r < 0) r += m;
    out[x] = static_cast<std::int32_t>(r);
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
  for (std::size_t m = 0; m < out.size(); ++m) {
    double re = 0.0, im = 0.0;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      re += coeffs[j] * cos_tab[idx];
      im += coeffs[j] * sin_tab[idx];
      idx += m;
      if (idx >= n) idx %= n;
    }
    out[m] = std::log(std::hypot(re, im));
  }
}

}  // namespace ncartan::simd::scalar
