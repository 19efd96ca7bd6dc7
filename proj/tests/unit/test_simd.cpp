#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ncartan/arith.hpp"
#include "ncartan/simd/kernels.hpp"

using namespace ncartan;

namespace {

std::vector<std::int32_t> norm_row_oracle(std::int64_t a1_sq, std::int64_t eps, std::int32_t m, std::size_t len) {
  std::vector<std::int32_t> out(len);
  for (std::size_t x = 0; x < len; ++x) {
    const std::int64_t xx = static_cast<std::int64_t>(x) % m;
    out[x] = static_cast<std::int32_t>(mod(a1_sq - mul_mod(eps, mul_mod(xx, xx, m), m), m));
  }
  return out;
}

std::vector<double> eigen_oracle(const std::vector<double>& c) {
  const std::size_t n = c.size();
  std::vector<double> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    std::complex<double> s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      s += c[j] * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j * m % n) / static_cast<double>(n));
    }
    out[m] = std::log(std::abs(s));
  }
  return out;
}

class IsaGuard {
 public:
  IsaGuard() : saved_(simd::active_isa()) {}
  ~IsaGuard() { simd::set_isa(saved_); }

 private:
  simd::Isa saved_;
};

}  // namespace

TEST(Simd, NormRowScalarMatchesOracle) {
  for (std::int32_t m : {5, 7, 25, 101, 9973}) {
    for (std::size_t len : {0u, 1u, 3u, 7u, 8u, 9u, 17u, 64u}) {
      const std::int64_t eps = mod(-1, m), a1 = 3 % m;
      std::vector<std::int32_t> out(len);
      simd::scalar::norm_row(a1 * a1 % m, eps, m, out);
      EXPECT_EQ(out, norm_row_oracle(a1 * a1 % m, eps, m, len)) << m << " " << len;
    }
  }
}

#if defined(NCARTAN_HAVE_AVX2)
TEST(Simd, NormRowAvx2MatchesScalarIncludingTails) {
  if (!simd::cpu_supports(simd::Isa::avx2)) GTEST_SKIP() << "CPU lacks AVX2";
  std::mt19937 rng(7);
  for (std::int32_t m : {5, 7, 25, 121, 10007, simd::kNormRowMaxModulus - 3}) {
    std::uniform_int_distribution<std::int64_t> r(0, m - 1);
    for (std::size_t len = 0; len < 40; ++len) {
      const std::int64_t a1_sq = r(rng), eps = r(rng);
      std::vector<std::int32_t> a(len), b(len);
      simd::scalar::norm_row(a1_sq, eps, m, a);
      simd::avx2::norm_row(a1_sq, eps, m, b);
      EXPECT_EQ(a, b) << "m = " << m << ", len = " << len;
    }
  }
}

TEST(Simd, EigenvaluesAvx2MatchScalar) {
  if (!simd::cpu_supports(simd::Isa::avx2)) GTEST_SKIP() << "CPU lacks AVX2";
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-50, 50);
  for (std::size_t n = 1; n < 60; n += 3) {
    std::vector<double> c(n);
    for (auto& x : c) x = u(rng);
    std::vector<double> a(n), b(n);
    simd::scalar::circulant_log_abs_eigenvalues(c, a);
    simd::avx2::circulant_log_abs_eigenvalues(c, b);
    for (std::size_t m = 0; m < n; ++m) EXPECT_NEAR(a[m], b[m], 1e-10 * std::max(1.0, std::abs(a[m])));
  }
}
#endif

TEST(Simd, EigenvaluesMatchDirectSum) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-10, 10);
  for (std::size_t n : {1u, 2u, 5u, 12u, 30u}) {
    std::vector<double> c(n);
    for (auto& x : c) x = u(rng);
    std::vector<double> out(n);
    simd::circulant_log_abs_eigenvalues(c, out);
    const auto want = eigen_oracle(c);
    for (std::size_t m = 0; m < n; ++m) EXPECT_NEAR(out[m], want[m], 1e-9);
  }
}

TEST(Simd, SetIsaFallsBackAndDispatches) {
  IsaGuard guard;
  simd::set_isa(simd::Isa::scalar);
  EXPECT_EQ(simd::active_isa(), simd::Isa::scalar);
  std::vector<std::int32_t> s(19), v(19);
  simd::norm_row(4, 10, 11, s);
  simd::set_isa(simd::Isa::avx2);
  EXPECT_EQ(simd::active_isa() == simd::Isa::avx2, simd::cpu_supports(simd::Isa::avx2));
  simd::norm_row(4, 10, 11, v);
  EXPECT_EQ(s, v);
  EXPECT_STREQ(simd::isa_name(simd::Isa::avx2), "avx2");
  EXPECT_STREQ(simd::isa_name(simd::Isa::scalar), "scalar");
}
