#pragma once

// Exact scalar arithmetic: big integers and rationals, small modular helpers,
// the second Bernoulli polynomial, primality testing and factorization.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ncartan {

using BigInteger = mpz_class;
using BigRational = mpq_class;

/// Builds num/den in lowest terms with a positive denominator.
BigRational make_rational(const BigInteger& num, const BigInteger& den);

/// <x> in [0, 1), with x - <x> an integer.
BigRational frac_part(const BigRational& x);

/// B_2(t) = t^2 - t + 1/6.
BigRational bernoulli2(const BigRational& t);

BigInteger floor_div(const BigInteger& a, const BigInteger& b);
bool is_integer(const BigRational& x);

// 64-bit modular helpers; results are in [0, m).
std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t m);
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);
std::int64_t ipow(std::int64_t base, unsigned exp);

/// Legendre symbol (a/p) by Euler's criterion. Throws InputError unless p is
/// an odd prime.
int legendre(std::int64_t a, std::int64_t p);

/// Distinct prime divisors of a machine integer, ascending.
std::vector<std::int64_t> prime_divisors(std::int64_t n);

enum class Primality { composite, probable, proven };

/// Deterministic below 2^64 (Miller-Rabin with a fixed base set, answer
/// `proven`); above that a strong base-2 test plus a strong Lucas test
/// (`probable`). A `composite` answer is always correct. 0 and 1 are composite.
Primality is_prime(const BigInteger& n);
bool is_prime_u64(std::uint64_t n);

// Component tests, exposed for testing.
bool strong_probable_prime(const BigInteger& n, unsigned long base);
bool strong_lucas_probable_prime(const BigInteger& n);

enum class Certainty { proven_prime, probable_prime, unsplit_composite };

struct PrimePower {
  BigInteger prime;
  unsigned exponent = 0;
  Certainty certainty = Certainty::proven_prime;

  bool operator==(const PrimePower&) const = default;
};

struct FactorBudget {
  std::uint64_t rho_iterations = 100'000'000;  // per composite
  std::uint64_t trial_bound = 100'000;
};

class Factorization {
 public:
  std::vector<PrimePower> entries;  // ascending by prime

  BigInteger value() const;
  bool complete() const;  // no unsplit composites
  /// "p1^e1 * p2^e2", ascending, ^1 omitted; "1" for the empty product.
  std::string to_string() const;

  bool operator==(const Factorization&) const = default;
};

/// Trial division, then for each cofactor: primality test, perfect-power
/// detection, Pollard-Brent rho. A cofactor rho cannot split within the
/// budget is returned as `unsplit_composite`.
Factorization factorize(const BigInteger& n, const FactorBudget& budget = {});

/// If n = r^k with k >= 2 maximal, returns (r, k).
std::optional<std::pair<BigInteger, unsigned>> perfect_power(const BigInteger& n);

/// A nontrivial factor of composite n, or nullopt when the iteration budget
/// runs out.
std::optional<BigInteger> pollard_brent(const BigInteger& n, std::uint64_t max_iterations,
                                        unsigned long seed = 1);

const char* to_string(Certainty c);
std::optional<Certainty> certainty_from_string(const std::string& s);

}  // namespace ncartan
