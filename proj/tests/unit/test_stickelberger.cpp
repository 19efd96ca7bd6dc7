#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "ncartan/errors.hpp"
#include "ncartan/stickelberger.hpp"

using namespace ncartan;

namespace {

BigRational q(long n, long d) { return make_rational(n, d); }

struct Level {
  std::int64_t p;
  int k;
};
const Level kLevels[] = {{5, 1}, {7, 1}, {11, 1}, {13, 1}, {17, 1}, {5, 2}};

// Oracle for a_i from the full unit group: every class {s, -s} is counted
// twice, and the H index is found by walking powers of w.
std::vector<BigRational> brute_a(const CartanContext& ctx) {
  const std::int64_t m = ctx.modulus(), n = ctx.group_order(), p = ctx.p();
  const std::int64_t eps = ctx.reduce(ctx.epsilon());
  std::vector<std::int64_t> index(static_cast<std::size_t>(m), -1);
  std::int64_t cur = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    index[static_cast<std::size_t>(cur)] = i;
    index[static_cast<std::size_t>(m - cur)] = i;
    cur = cur * ctx.generator() % m;
  }
  std::vector<BigRational> sums(static_cast<std::size_t>(n));
  for (std::int64_t x = 0; x < m; ++x) {
    for (std::int64_t y = 0; y < m; ++y) {
      const std::int64_t nm = mod(x * x - eps * y * y, m);
      if (nm % p == 0) continue;
      sums[static_cast<std::size_t>(index[static_cast<std::size_t>(nm)])] += bernoulli2(q(x, m));
    }
  }
  for (auto& s : sums) s *= q(m, 4);
  return sums;
}

}  // namespace

TEST(GroupRing, RingAxiomsOnRandomElements) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> coeff(-9, 9), den(1, 4);
  auto random_element = [&](std::size_t n) {
    GroupRingElement x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = q(coeff(rng), den(rng));
    return x;
  };
  for (std::size_t n : {1u, 2u, 5u, 12u}) {
    const auto one = GroupRingElement::basis(n, 0);
    for (int t = 0; t < 20; ++t) {
      const auto x = random_element(n), y = random_element(n), z = random_element(n);
      EXPECT_EQ(x * y, y * x);
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ(x * (y + z), x * y + x * z);
      EXPECT_EQ(x * one, x);
      EXPECT_EQ((x * y).degree(), x.degree() * y.degree());
      EXPECT_EQ(x.shifted(3), x * GroupRingElement::basis(n, 3));
      EXPECT_TRUE((x - x).is_zero());
    }
  }
}

TEST(GroupRing, Basics) {
  GroupRingElement x(std::vector<BigRational>{q(1, 2), q(-1, 3), 0});
  EXPECT_EQ(x.degree(), q(1, 6));
  EXPECT_FALSE(x.is_integral());
  EXPECT_EQ(x.denominator_lcm(), 6);
  EXPECT_EQ(x.shifted(1), GroupRingElement(std::vector<BigRational>{0, q(1, 2), q(-1, 3)}));
  EXPECT_EQ(GroupRingElement::basis(3, -1), GroupRingElement::basis(3, 2));
  EXPECT_TRUE((x * BigRational(6)).is_integral());
}

TEST(Stickelberger, P5WorkedExample) {
  const auto ctx = CartanContext::create(5, 1);
  const auto data = compute_stickelberger(ctx);
  EXPECT_EQ(data.a, (std::vector<BigRational>{q(-1, 2), q(1, 2)}));
  EXPECT_EQ(data.theta_prime, GroupRingElement(std::vector<BigRational>{-3, -2}));
  EXPECT_EQ(data.theta_prime.degree(), -5);
  EXPECT_EQ(data.d, 2);
  EXPECT_EQ(data.e, 5);
  EXPECT_EQ(theta_shift(5, 1), q(5, 2));
}

TEST(Stickelberger, P11IsIntegral) {
  const auto data = compute_stickelberger(CartanContext::create(11, 1));
  EXPECT_EQ(data.d, 1);
  EXPECT_TRUE(data.theta.is_integral());
  EXPECT_TRUE(data.theta_prime.is_integral());
}

TEST(Stickelberger, MatchesFullUnitGroupOracle) {
  for (const auto [p, k] : kLevels) {
    const auto ctx = CartanContext::create(p, k);
    EXPECT_EQ(compute_a(ctx), brute_a(ctx)) << "p = " << p << ", k = " << k;
  }
}

TEST(Stickelberger, AlgebraicInvariants) {
  for (const auto [p, k] : kLevels) {
    const auto ctx = CartanContext::create(p, k);
    const auto data = compute_stickelberger(ctx);
    EXPECT_EQ(data.theta.degree(), 0);
    EXPECT_EQ(data.theta_prime.degree(), -make_rational(BigInteger(p * p - 1) * ipow(p, 3 * k - 2), 24));
    for (const auto& ai : data.a) EXPECT_TRUE(is_integer(ai * data.d));
    const auto n = data.theta.size();
    for (std::size_t j = 1; j < n; ++j) {
      const auto row = (GroupRingElement::basis(n, static_cast<std::int64_t>(j)) - GroupRingElement::basis(n, 0)) *
                       data.theta;
      EXPECT_TRUE(row.is_integral());
    }
    EXPECT_TRUE((data.theta * BigRational(data.d)).is_integral());
  }
}

TEST(Stickelberger, IndependentOfEpsilon) {
  for (const auto [p, k] : kLevels) {
    const auto base = CartanContext::create(p, k);
    const auto ref = compute_a(base);
    for (auto eps : epsilon_candidates(p, 3)) {
      EXPECT_EQ(compute_a(CartanContext(p, k, eps, base.generator())), ref) << "p = " << p << ", eps = " << eps;
    }
  }
}

TEST(Stickelberger, GeneratorChangePermutesA) {
  for (const auto [p, k] : kLevels) {
    const auto base = CartanContext::create(p, k);
    const auto a = compute_a(base);
    const std::int64_t n = base.group_order();
    for (std::int64_t t = 2; t < n; ++t) {
      if (std::gcd(t, n) != 1) continue;
      const std::int64_t w2 = base.h_element(t);
      const auto a2 = compute_a(CartanContext(p, k, base.epsilon(), w2));
      for (std::int64_t i = 0; i < n; ++i) {
        EXPECT_EQ(a2[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(mod(t * i, n))]);
      }
    }
  }
}

TEST(QuadraticSums, HoldsForEveryH) {
  for (const auto [p, k] : kLevels) {
    const auto ctx = CartanContext::create(p, k);
    const auto buckets = norm_class_partition(ctx);
    for (std::int64_t i = 0; i < ctx.group_order(); ++i) EXPECT_TRUE(somme_identities_check(ctx, buckets, i));
  }
  EXPECT_THROW(somme_identities_check(CartanContext::create(5, 1), 2), InputError);
}

TEST(QuadraticSums, AgreesWithUnitSums) {
  // Over units of exact norm h (both lifts of each class), the quadratic sums
  // are twice the class sums.
  for (const auto [p, k] : kLevels) {
    const auto ctx = CartanContext::create(p, k);
    const std::int64_t m = ctx.modulus();
    const std::int64_t eps = ctx.reduce(ctx.epsilon());
    const std::int64_t c = (p + 1) * (m / p);
    for (std::int64_t h = 1; h < m; ++h) {
      if (h % p == 0) continue;
      std::int64_t s11 = 0, s22 = 0, s12 = 0;
      for (const auto& s : enumerate_units(ctx)) {
        if (norm(ctx, s) != h) continue;
        s11 = (s11 + s.a1 * s.a1) % m;
        s22 = (s22 + s.a2 * s.a2) % m;
        s12 = (s12 + s.a1 * s.a2) % m;
      }
      // 4 s11 = 2 h c and 4 eps s22 = -2 h c.
      EXPECT_EQ(mod(4 * s11, m), mod(2 * h * c, m));
      EXPECT_EQ(mod(4 * eps % m * s22, m), mod(-2 * h * c, m));
      EXPECT_EQ(s12, 0);
    }
  }
}

TEST(Units, DivisorExamples) {
  const auto ctx = CartanContext::create(5, 1);
  const auto data = compute_stickelberger(ctx);
  // d = 2: exponent 2 at the identity gives 2 theta.
  EXPECT_EQ(divisor_of_unit(ctx, data, {2, 0}), GroupRingElement(std::vector<BigRational>{-1, 1}));
  EXPECT_EQ(divisor_of_unit(ctx, data, {1, 1}), GroupRingElement(2));
  EXPECT_THROW(divisor_of_unit(ctx, data, {1, 0}), InputError);
  EXPECT_THROW(divisor_of_unit(ctx, data, {1, 0, 1}), InputError);
}

TEST(Units, KubertLangOnBuckets) {
  for (const auto [p, k] : kLevels) {
    const auto ctx = CartanContext::create(p, k);
    const auto buckets = norm_class_partition(ctx);
    const std::int64_t d = unit_exponent_modulus(p);
    for (const auto& bucket : buckets) {
      std::vector<std::pair<CartanClass, BigInteger>> fam;
      for (const auto& c : bucket) fam.emplace_back(c, BigInteger(d));
      EXPECT_TRUE(kl_unit_check(p, k, fam));
      if (d > 1) {
        for (auto& [c, e] : fam) e = 1;
        EXPECT_FALSE(kl_unit_check(p, k, fam)) << "exponent sum not divisible by 12";
      }
    }
  }
  EXPECT_FALSE(kl_unit_check(5, 1, {{CartanClass{1, 0}, BigInteger(12)}}));
  EXPECT_TRUE(kl_unit_check(5, 1, {{CartanClass{1, 0}, BigInteger(60)}}));
}

TEST(Units, DegreeFormulas) {
  EXPECT_EQ(unit_exponent_modulus(5), 2);
  EXPECT_EQ(unit_exponent_modulus(7), 3);
  EXPECT_EQ(unit_exponent_modulus(11), 1);
  EXPECT_EQ(unit_exponent_modulus(13), 6);
  EXPECT_EQ(expected_degree_theta_prime(5, 2), q(-24 * 625, 24));
}
