#include <numeric>
#include <string>

#include "ncartan/classgroup.hpp"
#include "ncartan/errors.hpp"

namespace ncartan {

namespace {

// Determinant over Q by Gaussian elimination; deliberately not Bareiss so the
// k = 1 formula shares no elimination code with the circulant route.
BigRational rational_determinant(std::vector<std::vector<BigRational>> a) {
  const std::size_t n = a.size();
  BigRational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && sgn(a[r][c]) == 0) ++r;
    if (r == n) return 0;
    if (r != c) {
      std::swap(a[r], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      const BigRational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

// A generator of F_{p^2}^* = (Z/p)[sqrt(eps)]^*.
CartanElement field_generator(const CartanContext& f) {
  const std::int64_t p = f.p();
  const std::int64_t order = p * p - 1;
  const std::vector<std::int64_t> primes = prime_divisors(order);
  auto power = [&](CartanElement x, std::int64_t e) {
    CartanElement r{1, 0};
    while (e > 0) {
      if (e & 1) r = multiply(f, r, x);
      x = multiply(f, x, x);
      e >>= 1;
    }
    return r;
  };
  for (std::int64_t a2 = 1; a2 < p; ++a2) {
    for (std::int64_t a1 = 0; a1 < p; ++a1) {
      const CartanElement v{a1, a2};
      bool generates = true;
      for (std::int64_t q : primes) {
        if (power(v, order / q) == CartanElement{1, 0}) {
          generates = false;
          break;
        }
      }
      if (generates) return v;
    }
  }
  throw InvariantViolation("F_{p^2}^* has no generator");
}

}  // namespace

BigInteger bernoulli_formula_k1(std::int64_t p) {
  const CartanContext f = CartanContext::create(p, 1);
  const std::int64_t group = p * p - 1;
  const CartanElement v = field_generator(f);

  std::vector<std::int64_t> half_trace(static_cast<std::size_t>(group));
  CartanElement x{1, 0};
  for (std::int64_t m = 0; m < group; ++m) {
    half_trace[static_cast<std::size_t>(m)] = x.a1;
    x = multiply(f, x, v);
  }
  ensure(x == CartanElement{1, 0}, "v^(p^2-1) != 1");

  const std::int64_t size = (p - 1) / 2;
  const BigRational half_p = make_rational(p, 2);
  const BigRational shift = make_rational(p + 1, 6);
  std::vector<std::vector<BigRational>> a(static_cast<std::size_t>(size), std::vector<BigRational>(static_cast<std::size_t>(size)));
  for (std::int64_t i = 1; i <= size; ++i) {
    for (std::int64_t j = 1; j <= size; ++j) {
      BigRational sum = 0;
      for (std::int64_t l = 0; l <= p; ++l) {
        const std::int64_t e = mod(i - j + l * size, group);
        sum += bernoulli2(frac_part(make_rational(half_trace[static_cast<std::size_t>(e)], p)));
      }
      a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = half_p * (sum - shift);
    }
  }

  const BigRational det = rational_determinant(std::move(a));
  ensure(sgn(det) != 0, "Bernoulli determinant vanishes");
  const BigRational value = 576 * abs(det) /
                            BigRational(BigInteger(p - 1) * (p - 1) * p * (p + 1) * std::gcd<std::int64_t>(12, p + 1));
  ensure(is_integer(value), "Bernoulli formula gives a non-integer: " + value.get_str());
  return value.get_num();
}

}  // namespace ncartan
