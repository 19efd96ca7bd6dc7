#pragma once

// Group ring Q[H] over the cyclic group H = <w>, the Stickelberger element
// theta built from B_2 sums over norm buckets, and divisors of the units G+_h.
//
// Indexing: position j of a GroupRingElement is the coefficient of w^j, so
// position 0 is the identity. a_i is the sum over the bucket of w^i and sits
// at position -i mod n in theta.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ncartan/arith.hpp"
#include "ncartan/cartan.hpp"

namespace ncartan {

class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(std::size_t n);
  explicit GroupRingElement(std::vector<BigRational> coeffs);

  /// w^j, as a basis element of Z[H] with n elements.
  static GroupRingElement basis(std::size_t n, std::int64_t j);

  std::size_t size() const { return coeffs_.size(); }
  const BigRational& operator[](std::size_t j) const { return coeffs_[j]; }
  BigRational& operator[](std::size_t j) { return coeffs_[j]; }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }

  /// Sum of all coefficients (the augmentation map).
  BigRational degree() const;
  bool is_integral() const;
  bool is_zero() const;
  /// Multiplication by w^j: coefficient at i moves to i + j.
  GroupRingElement shifted(std::int64_t j) const;
  /// Least common multiple of the coefficient denominators.
  BigInteger denominator_lcm() const;

  GroupRingElement& operator+=(const GroupRingElement& o);
  GroupRingElement& operator-=(const GroupRingElement& o);
  GroupRingElement& operator*=(const BigRational& c);

  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(GroupRingElement a, const BigRational& c) { return a *= c; }
  /// Cyclic convolution.
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  std::vector<BigRational> coeffs_;
};

struct StickelbergerData {
  std::vector<BigRational> a;  // a_i, i in [0, n)
  GroupRingElement theta;
  GroupRingElement theta_prime;
  std::int64_t d = 0;  // 12 / gcd(12, p+1)
  BigInteger e;        // p^(3k-2) (p-1) / (2d)
};

std::int64_t unit_exponent_modulus(std::int64_t p);  // d
/// (p+1) p^(2k-1) / 12, the constant removed from theta to form theta'.
BigRational theta_shift(std::int64_t p, int k);
/// -(p^2-1) p^(3k-2) / 24.
BigRational expected_degree_theta_prime(std::int64_t p, int k);

std::vector<BigRational> compute_a(const CartanContext& ctx);
std::vector<BigRational> compute_a(const CartanContext& ctx, const NormBuckets& buckets);
GroupRingElement theta_from_a(const std::vector<BigRational>& a);

/// Computes a, theta, theta', d, e and asserts: sum a_i = 0, deg theta' as
/// expected, d a_i integral, (w^j - 1) theta integral for every j.
StickelbergerData compute_stickelberger(const CartanContext& ctx);
StickelbergerData compute_stickelberger(const CartanContext& ctx, const NormBuckets& buckets);

/// (sum_h n_h w^h) theta, the divisor of prod_h (G+_{w^h})^{n_h}. Throws
/// InputError unless d divides sum n_h; asserts the result is integral of
/// degree zero.
GroupRingElement divisor_of_unit(const CartanContext& ctx, const StickelbergerData& data,
                                 const std::vector<BigInteger>& exponents);

/// Kubert-Lang criterion at level n = p^k for the product of Klein forms
/// k_{[t]}^{m_t}, t = (a1, a2) / p^k: the three quadratic sums vanish mod n
/// and sum m_t = 0 mod 12.
bool kl_unit_check(std::int64_t p, int k, const std::vector<std::pair<CartanClass, BigInteger>>& family);

/// Quadratic sums over the classes of norm exactly h, for both h = w^i and
/// h = -w^i, against (h/4)(p+1)p^(k-1), -(h/(4 eps))(p+1)p^(k-1) and 0 mod
/// p^k; the sums over the whole bucket must vanish.
bool somme_identities_check(const CartanContext& ctx, const NormBuckets& buckets, std::int64_t i);
bool somme_identities_check(const CartanContext& ctx, std::int64_t i);

}  // namespace ncartan
