#include <random>

#include <gtest/gtest.h>

#include "ncartan/arith.hpp"
#include "ncartan/errors.hpp"

using namespace ncartan;

namespace {

BigRational q(long n, long d) { return make_rational(n, d); }

// Oracle: plain trial division.
std::vector<std::pair<long, unsigned>> trial_division(long n) {
  std::vector<std::pair<long, unsigned>> out;
  for (long f = 2; f * f <= n; ++f) {
    unsigned e = 0;
    while (n % f == 0) {
      n /= f;
      ++e;
    }
    if (e) out.emplace_back(f, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool gmp_says_prime(const BigInteger& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

}  // namespace

TEST(FracPart, Examples) {
  EXPECT_EQ(frac_part(q(7, 5)), q(2, 5));
  EXPECT_EQ(frac_part(q(-1, 5)), q(4, 5));
  EXPECT_EQ(frac_part(q(3, 1)), q(0, 1));
}

TEST(FracPart, RangeAndIntegerDifference) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 997);
  for (int i = 0; i < 2000; ++i) {
    const BigRational x = q(num(rng), den(rng));
    const BigRational f = frac_part(x);
    EXPECT_GE(f, 0);
    EXPECT_LT(f, 1);
    EXPECT_TRUE(is_integer(x - f));
  }
}

TEST(Bernoulli2, Examples) {
  EXPECT_EQ(bernoulli2(0), q(1, 6));
  EXPECT_EQ(bernoulli2(q(1, 5)), q(1, 150));
}

TEST(Bernoulli2, SymmetricUnderReflection) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long> num(-5000, 5000), den(1, 499);
  for (int i = 0; i < 1000; ++i) {
    const BigRational t = q(num(rng), den(rng));
    EXPECT_EQ(bernoulli2(t), bernoulli2(1 - t));
  }
}

TEST(Bernoulli2, DistributionIdentity) {
  for (long m : {5L, 7L, 11L, 25L}) {
    BigRational sum = 0;
    for (long a = 0; a < m; ++a) sum += bernoulli2(q(a, m));
    EXPECT_EQ(sum, q(1, 6 * m)) << "m = " << m;
  }
}

TEST(Legendre, Examples) {
  EXPECT_EQ(legendre(-1, 11), -1);
  EXPECT_EQ(legendre(-1, 5), 1);
  EXPECT_EQ(legendre(0, 7), 0);
  EXPECT_THROW(legendre(2, 9), InputError);
  EXPECT_THROW(legendre(2, 2), InputError);
}

TEST(Legendre, MatchesSquareEnumeration) {
  for (std::int64_t p : {5, 7, 11, 13, 101}) {
    std::vector<bool> square(static_cast<std::size_t>(p), false);
    for (std::int64_t x = 1; x < p; ++x) square[static_cast<std::size_t>(x * x % p)] = true;
    for (std::int64_t a = 1; a < p; ++a) EXPECT_EQ(legendre(a, p), square[static_cast<std::size_t>(a)] ? 1 : -1);
  }
}

TEST(IsPrime, Examples) {
  EXPECT_NE(is_prime(37181), Primality::composite);
  EXPECT_EQ(is_prime(3025), Primality::composite);
  EXPECT_EQ(is_prime(1), Primality::composite);
  EXPECT_EQ(is_prime(0), Primality::composite);
  EXPECT_EQ(is_prime(2), Primality::proven);
}

TEST(IsPrime, AgreesWithGmpBelowAMillion) {
  for (long n = 0; n < 1'000'000; n += 7) {
    EXPECT_EQ(is_prime(n) != Primality::composite, gmp_says_prime(n)) << n;
  }
}

TEST(IsPrime, AgreesWithGmpOnLargeValues) {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(2024);
  int primes = 0;
  for (int i = 0; i < 3000; ++i) {
    BigInteger n = rng.get_z_bits(64 + i % 130) | 1;
    const bool ours = is_prime(n) != Primality::composite;
    EXPECT_EQ(ours, gmp_says_prime(n)) << n.get_str();
    primes += ours;
  }
  EXPECT_GT(primes, 10);
}

TEST(IsPrime, PseudoprimesAreCaught) {
  // Strong base-2 pseudoprimes and Carmichael numbers.
  for (long n : {2047L, 3277L, 4033L, 561L, 1105L, 1729L, 3215031751L}) EXPECT_EQ(is_prime(n), Primality::composite) << n;
  EXPECT_TRUE(strong_probable_prime(2047, 2));
  // Strong Lucas pseudoprimes.
  for (long n : {5459L, 5777L, 10877L}) {
    EXPECT_TRUE(strong_lucas_probable_prime(n)) << n;
    EXPECT_FALSE(strong_probable_prime(n, 2)) << n;
  }
  // Beyond 2^64 the answer for primes is "probable".
  const BigInteger big("9988553613691393812358794271");
  EXPECT_EQ(is_prime(big), Primality::probable);
  EXPECT_EQ(is_prime(big * big), Primality::composite);
}

TEST(Factorize, Examples) {
  const Factorization f = factorize(1183);
  ASSERT_EQ(f.entries.size(), 2u);
  EXPECT_EQ(f.entries[0].prime, 7);
  EXPECT_EQ(f.entries[0].exponent, 1u);
  EXPECT_EQ(f.entries[1].prime, 13);
  EXPECT_EQ(f.entries[1].exponent, 2u);
  EXPECT_EQ(f.to_string(), "7 * 13^2");
  EXPECT_TRUE(factorize(1).entries.empty());
  EXPECT_EQ(factorize(1).to_string(), "1");
}

TEST(Factorize, SquaredLargePrimeViaPerfectPower) {
  const BigInteger r("58884077243434864347851");
  const Factorization f = factorize(r * r);
  ASSERT_EQ(f.entries.size(), 1u);
  EXPECT_EQ(f.entries[0].prime, r);
  EXPECT_EQ(f.entries[0].exponent, 2u);
  EXPECT_EQ(f.entries[0].certainty, Certainty::probable_prime);
  const auto pp = perfect_power(r * r * r);
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->first, r);
  EXPECT_EQ(pp->second, 3u);
  EXPECT_FALSE(perfect_power(r));
}

TEST(Factorize, RandomBelowAMillionMatchesTrialDivision) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> dist(1, 999'999);
  for (int i = 0; i < 3000; ++i) {
    const long n = dist(rng);
    const Factorization f = factorize(n);
    EXPECT_EQ(f.value(), n);
    const auto oracle = trial_division(n);
    ASSERT_EQ(f.entries.size(), oracle.size()) << n;
    for (std::size_t j = 0; j < oracle.size(); ++j) {
      EXPECT_EQ(f.entries[j].prime, oracle[j].first);
      EXPECT_EQ(f.entries[j].exponent, oracle[j].second);
      EXPECT_EQ(f.entries[j].certainty, Certainty::proven_prime);
    }
  }
}

TEST(Factorize, RhoSplitsSemiprimeBeyondTrialBound) {
  const BigInteger a("1000000007"), b("998244353"), c("1000000000039");
  const Factorization f = factorize(a * b * b * c);
  ASSERT_EQ(f.entries.size(), 3u);
  EXPECT_EQ(f.entries[0].prime, b);
  EXPECT_EQ(f.entries[0].exponent, 2u);
  EXPECT_EQ(f.entries[1].prime, a);
  EXPECT_EQ(f.entries[2].prime, c);
  EXPECT_TRUE(f.complete());
  for (const auto& e : f.entries) EXPECT_TRUE(gmp_says_prime(e.prime));
}

TEST(Factorize, ExhaustedBudgetIsReportedNotHidden) {
  const BigInteger a("1000000000039"), b("1000000000061");
  FactorBudget tiny;
  tiny.rho_iterations = 10;
  const Factorization f = factorize(a * b, tiny);
  EXPECT_EQ(f.value(), a * b);
  ASSERT_EQ(f.entries.size(), 1u);
  EXPECT_EQ(f.entries[0].certainty, Certainty::unsplit_composite);
  EXPECT_FALSE(f.complete());
}

TEST(Factorize, EntriesAreSortedAndCertified) {
  const BigInteger n("224522843272382188896322403364788");  // the p = 43 order
  const Factorization f = factorize(n);
  EXPECT_EQ(f.value(), n);
  EXPECT_EQ(f.to_string(), "2^2 * 19 * 29 * 43^9 * 463 * 1051 * 416532733");
  for (std::size_t i = 1; i < f.entries.size(); ++i) EXPECT_LT(f.entries[i - 1].prime, f.entries[i].prime);
}

TEST(ModularHelpers, Basics) {
  EXPECT_EQ(mod(-7, 5), 3);
  EXPECT_EQ(pow_mod(2, 10, 1000), 24);
  EXPECT_EQ(mul_mod(inverse_mod(4, 25), 4, 25), 1);
  EXPECT_EQ(ipow(101, 2), 10201);
  EXPECT_EQ(prime_divisors(360), (std::vector<std::int64_t>{2, 3, 5}));
}
