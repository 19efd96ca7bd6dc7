#include <array>

#include "ncartan/arith.hpp"

namespace ncartan {

namespace {

constexpr std::array<std::uint64_t, 12> kDeterministicBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

using u128 = unsigned __int128;

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin_u64(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// x / 2 mod n for odd n.
void half_mod(BigInteger& x, const BigInteger& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
}

void reduce(BigInteger& x, const BigInteger& n) { mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t()); }

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kDeterministicBases) {
    if (n % p == 0) return n == p;
  }
  for (std::uint64_t a : kDeterministicBases) {
    if (!miller_rabin_u64(n, a)) return false;
  }
  return true;
}

bool strong_probable_prime(const BigInteger& n, unsigned long base) {
  if (n < 2) return false;
  if (n == 2) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  BigInteger d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  BigInteger x;
  BigInteger b = base;
  mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const BigInteger n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x;
    reduce(x, n);
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Strong Lucas test with Selfridge's parameters: D the first of 5, -7, 9,
// -11, ... with (D/n) = -1, P = 1, Q = (1 - D)/4.
bool strong_lucas_probable_prime(const BigInteger& n) {
  if (n < 2) return false;
  if (n == 2) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;

  long D = 5;
  for (;;) {
    BigInteger d = D;
    int j = mpz_jacobi(d.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0) {
      // gcd(D, n) > 1: n is composite unless it equals |D|.
      BigInteger absd = D < 0 ? -D : D;
      return n == absd;
    }
    D = D > 0 ? -(D + 2) : -(D - 2);
  }
  const long P = 1;
  const long Q = (1 - D) / 4;

  BigInteger k = n + 1;
  unsigned long s = mpz_scan1(k.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(k.get_mpz_t(), k.get_mpz_t(), s);

  BigInteger U = 1, V = P, Qk = Q;
  reduce(Qk, n);
  const BigInteger bigD = D, bigQ = Q;
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    // Doubling: U_2m = U_m V_m, V_2m = V_m^2 - 2 Q^m.
    U = U * V;
    reduce(U, n);
    V = V * V - 2 * Qk;
    reduce(V, n);
    Qk = Qk * Qk;
    reduce(Qk, n);
    if (mpz_tstbit(k.get_mpz_t(), i)) {
      // Increment: U_{m+1} = (P U + V)/2, V_{m+1} = (D U + P V)/2.
      BigInteger u2 = P * U + V;
      BigInteger v2 = bigD * U + P * V;
      reduce(u2, n);
      reduce(v2, n);
      half_mod(u2, n);
      half_mod(v2, n);
      U = u2;
      V = v2;
      Qk = Qk * bigQ;
      reduce(Qk, n);
    }
  }
  if (U == 0 || V == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    V = V * V - 2 * Qk;
    reduce(V, n);
    if (V == 0) return true;
    Qk = Qk * Qk;
    reduce(Qk, n);
  }
  return false;
}

Primality is_prime(const BigInteger& n) {
  if (n < 2) return Primality::composite;
  if (mpz_fits_ulong_p(n.get_mpz_t())) {
    return is_prime_u64(mpz_get_ui(n.get_mpz_t())) ? Primality::proven : Primality::composite;
  }
  for (unsigned long p : kDeterministicBases) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Primality::composite;
  }
  if (!strong_probable_prime(n, 2)) return Primality::composite;
  if (!strong_lucas_probable_prime(n)) return Primality::composite;
  return Primality::probable;
}

}  // namespace ncartan
