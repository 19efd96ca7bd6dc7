#include "ncartan/stickelberger.hpp"

#include <numeric>
#include <string>

#include "ncartan/errors.hpp"

namespace ncartan {

std::int64_t unit_exponent_modulus(std::int64_t p) { return 12 / std::gcd<std::int64_t>(12, p + 1); }

BigRational theta_shift(std::int64_t p, int k) {
  return make_rational(BigInteger(p + 1) * ipow(p, static_cast<unsigned>(2 * k - 2)) * BigInteger(p), 12);
}

BigRational expected_degree_theta_prime(std::int64_t p, int k) {
  BigInteger num = BigInteger(p) * p - 1;
  BigInteger pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(3 * k - 2));
  return -make_rational(num * pk, 24);
}

std::vector<BigRational> compute_a(const CartanContext& ctx) { return compute_a(ctx, norm_class_partition(ctx)); }

std::vector<BigRational> compute_a(const CartanContext& ctx, const NormBuckets& buckets) {
  const BigInteger m = static_cast<long>(ctx.modulus());
  const BigRational half_m = make_rational(m, 2);
  std::vector<BigRational> a;
  a.reserve(buckets.size());
  for (const auto& bucket : buckets) {
    BigRational sum = 0;
    for (const CartanClass& c : bucket) {
      const BigRational t = frac_part(make_rational(static_cast<long>(trace_half(ctx, as_element(c))), m));
      const BigRational b = bernoulli2(t);
      // The sum runs over classes of {s, -s}; it is well defined only because
      // B_2(1 - t) = B_2(t).
      ensure(b == bernoulli2(frac_part(-t)), "B_2 is not even on a class");
      sum += b;
    }
    a.push_back(half_m * sum);
  }
  return a;
}

GroupRingElement theta_from_a(const std::vector<BigRational>& a) {
  const auto n = static_cast<std::int64_t>(a.size());
  GroupRingElement theta(a.size());
  for (std::int64_t i = 0; i < n; ++i) theta[static_cast<std::size_t>(mod(-i, n))] = a[static_cast<std::size_t>(i)];
  return theta;
}

StickelbergerData compute_stickelberger(const CartanContext& ctx) {
  return compute_stickelberger(ctx, norm_class_partition(ctx));
}

StickelbergerData compute_stickelberger(const CartanContext& ctx, const NormBuckets& buckets) {
  const std::int64_t p = ctx.p();
  const int k = ctx.k();
  StickelbergerData out;
  out.a = compute_a(ctx, buckets);
  out.theta = theta_from_a(out.a);
  out.d = unit_exponent_modulus(p);

  BigInteger e_num;
  mpz_ui_pow_ui(e_num.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(3 * k - 2));
  e_num *= p - 1;
  ensure(e_num % (2 * out.d) == 0, "e = p^(3k-2)(p-1)/(2d) is not an integer");
  out.e = e_num / (2 * out.d);

  ensure(sgn(out.theta.degree()) == 0, "sum of a_i is not zero");

  out.theta_prime = out.theta;
  const BigRational shift = theta_shift(p, k);
  for (std::size_t j = 0; j < out.theta_prime.size(); ++j) out.theta_prime[j] -= shift;
  ensure(out.theta_prime.degree() == expected_degree_theta_prime(p, k),
         "deg theta' = " + out.theta_prime.degree().get_str() + ", expected " +
             expected_degree_theta_prime(p, k).get_str());

  for (const auto& ai : out.a) ensure(is_integer(ai * out.d), "d * a_i is not integral");
  // (w^j - 1) theta is integral for all j iff all a_i agree mod Z.
  for (const auto& ai : out.a) ensure(is_integer(ai - out.a.front()), "(w^j - 1) theta is not integral");
  return out;
}

GroupRingElement divisor_of_unit(const CartanContext& ctx, const StickelbergerData& data,
                                 const std::vector<BigInteger>& exponents) {
  if (exponents.size() != data.theta.size()) {
    throw InputError("exponent vector has length " + std::to_string(exponents.size()) + ", expected " +
                     std::to_string(data.theta.size()));
  }
  BigInteger total = 0;
  GroupRingElement x(exponents.size());
  for (std::size_t h = 0; h < exponents.size(); ++h) {
    total += exponents[h];
    x[h] = exponents[h];
  }
  if (total % data.d != 0) {
    throw InputError("d = " + std::to_string(data.d) + " does not divide the exponent sum " + total.get_str() +
                     ": not a modular unit on X+_ns(" + std::to_string(ctx.modulus()) + ")");
  }
  GroupRingElement div = x * data.theta;
  ensure(div.is_integral(), "divisor of a modular unit is not integral");
  ensure(sgn(div.degree()) == 0, "divisor of a modular unit has nonzero degree");
  return div;
}

bool kl_unit_check(std::int64_t p, int k, const std::vector<std::pair<CartanClass, BigInteger>>& family) {
  const BigInteger n = static_cast<long>(ipow(p, static_cast<unsigned>(k)));
  BigInteger s11 = 0, s22 = 0, s12 = 0, total = 0;
  for (const auto& [c, m] : family) {
    s11 += m * c.a1 * c.a1;
    s22 += m * c.a2 * c.a2;
    s12 += m * c.a1 * c.a2;
    total += m;
  }
  auto divides = [](const BigInteger& d, const BigInteger& x) { return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0; };
  return divides(n, s11) && divides(n, s22) && divides(n, s12) && divides(12, total);
}

bool somme_identities_check(const CartanContext& ctx, std::int64_t i) {
  return somme_identities_check(ctx, norm_class_partition(ctx), i);
}

bool somme_identities_check(const CartanContext& ctx, const NormBuckets& buckets, std::int64_t i) {
  const std::int64_t m = ctx.modulus();
  const std::int64_t n = ctx.group_order();
  if (i < 0 || i >= n) throw InputError("H index out of range");
  const std::int64_t h_plus = ctx.h_element(i);
  const std::int64_t inv4 = inverse_mod(4, m);
  const std::int64_t inv_eps = inverse_mod(ctx.reduce(ctx.epsilon()), m);
  const std::int64_t count = (ctx.p() + 1) * (m / ctx.p()) % m;

  bool ok = true;
  std::int64_t all11 = 0, all22 = 0, all12 = 0;
  for (const std::int64_t h : {h_plus, m - h_plus}) {
    std::int64_t s11 = 0, s22 = 0, s12 = 0;
    for (const CartanClass& c : buckets[static_cast<std::size_t>(i)]) {
      if (norm(ctx, as_element(c)) != h) continue;
      s11 = (s11 + mul_mod(c.a1, c.a1, m)) % m;
      s22 = (s22 + mul_mod(c.a2, c.a2, m)) % m;
      s12 = (s12 + mul_mod(c.a1, c.a2, m)) % m;
    }
    const std::int64_t rhs1 = mul_mod(mul_mod(h, count, m), inv4, m);
    const std::int64_t rhs2 = mod(-mul_mod(rhs1, inv_eps, m), m);
    ok = ok && s11 == rhs1 && s22 == rhs2 && s12 == 0;
    all11 = (all11 + s11) % m;
    all22 = (all22 + s22) % m;
    all12 = (all12 + s12) % m;
  }
  return ok && all11 == 0 && all22 == 0 && all12 == 0;
}

}  // namespace ncartan
