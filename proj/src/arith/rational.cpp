#include "ncartan/arith.hpp"
#include "ncartan/errors.hpp"

namespace ncartan {

BigRational make_rational(const BigInteger& num, const BigInteger& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

BigInteger floor_div(const BigInteger& a, const BigInteger& b) {
  BigInteger q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool is_integer(const BigRational& x) { return x.get_den() == 1; }

BigRational frac_part(const BigRational& x) {
  BigInteger fl = floor_div(x.get_num(), x.get_den());
  BigRational r = x - BigRational(fl);
  r.canonicalize();
  return r;
}

BigRational bernoulli2(const BigRational& t) {
  BigRational r = t * t - t + BigRational(1, 6);
  r.canonicalize();
  return r;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  __int128 r = static_cast<__int128>(mod(a, m)) * mod(b, m) % m;
  return static_cast<std::int64_t>(r);
}

std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t m) {
  std::int64_t result = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw std::domain_error("not invertible modulo m");
  return mod(old_s, m);
}

std::int64_t ipow(std::int64_t base, unsigned exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

int legendre(std::int64_t a, std::int64_t p) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(static_cast<std::uint64_t>(p))) {
    throw InputError("legendre: modulus " + std::to_string(p) + " is not an odd prime");
  }
  std::int64_t r = mod(a, p);
  if (r == 0) return 0;
  return pow_mod(r, static_cast<std::uint64_t>((p - 1) / 2), p) == 1 ? 1 : -1;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 0) n = -n;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace ncartan
