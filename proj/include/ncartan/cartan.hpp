#pragma once

// Arithmetic in (O_K / p^k O_K) = (Z/p^k Z)[sqrt(eps)], the non-split Cartan
// group it carries, and the curve-level counting formulas.

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace ncartan {

/// s = a1 + a2 sqrt(eps), residues mod p^k.
struct CartanElement {
  std::int64_t a1 = 0;
  std::int64_t a2 = 0;

  auto operator<=>(const CartanElement&) const = default;
};

/// Canonical representative of {s, -s}: 0 <= a1 <= (p^k-1)/2,
/// 0 <= a2 < p^k, and a2 <= (p^k-1)/2 when a1 = 0.
struct CartanClass {
  std::int64_t a1 = 0;
  std::int64_t a2 = 0;

  auto operator<=>(const CartanClass&) const = default;
};

/// Fixed level data: p, k, eps and a generator w of H = (Z/p^k)^*/{+-1}.
/// Immutable after construction; all invariants are checked there.
class CartanContext {
 public:
  /// Default eps (choose_epsilon) and generator (find_generator_H).
  static CartanContext create(std::int64_t p, int k);

  /// Throws InputError when p is not a prime >= 5, k < 1, eps is not a valid
  /// choice for p, or w does not generate H.
  CartanContext(std::int64_t p, int k, std::int64_t epsilon, std::int64_t generator);

  std::int64_t p() const { return p_; }
  int k() const { return k_; }
  std::int64_t epsilon() const { return epsilon_; }
  std::int64_t modulus() const { return modulus_; }
  /// |H| = (p-1) p^(k-1) / 2.
  std::int64_t group_order() const { return n_; }
  std::int64_t generator() const { return w_; }

  std::int64_t reduce(std::int64_t x) const;
  /// i in [0, n) with w^i = +-x mod p^k; nullopt when p | x.
  std::optional<std::int64_t> h_index(std::int64_t x) const;
  /// w^i mod p^k.
  std::int64_t h_element(std::int64_t i) const;

 private:
  std::int64_t p_;
  int k_;
  std::int64_t epsilon_;
  std::int64_t modulus_;
  std::int64_t n_;
  std::int64_t w_;
  std::vector<std::int32_t> dlog_;  // residue -> H index, -1 for non-units
  std::vector<std::int64_t> powers_;
};

bool is_squarefree(std::int64_t n);
/// eps squarefree, eps = 3 mod 4 and a non-residue mod p.
bool is_valid_epsilon(std::int64_t eps, std::int64_t p);
/// -1 when p = 3 mod 4, else the smallest valid positive eps.
std::int64_t choose_epsilon(std::int64_t p);
/// The first `count` valid choices in scan order (-1, 3, 7, 11, ...).
std::vector<std::int64_t> epsilon_candidates(std::int64_t p, std::size_t count);

bool generates_H(std::int64_t g, std::int64_t p, int k);
/// Smallest positive integer whose class generates H.
std::int64_t find_generator_H(std::int64_t p, int k);
/// Generators of H in increasing order, up to `count` of them.
std::vector<std::int64_t> generators_H(std::int64_t p, int k, std::size_t count);

std::int64_t norm(const CartanContext& ctx, CartanElement s);
/// (s + conj(s)) / 2 = a1.
std::int64_t trace_half(const CartanContext& ctx, CartanElement s);
CartanElement multiply(const CartanContext& ctx, CartanElement s, CartanElement t);
CartanElement negate(const CartanContext& ctx, CartanElement s);
CartanElement conjugate(const CartanContext& ctx, CartanElement s);
bool is_invertible(const CartanContext& ctx, CartanElement s);
/// Throws InputError when s is not invertible.
CartanClass canonical_class(const CartanContext& ctx, CartanElement s);
inline CartanElement as_element(CartanClass c) { return {c.a1, c.a2}; }

/// Bucket i holds the classes s with +-|s| = w^i, i in [0, n). Every bucket
/// has (p+1) p^(k-1) classes.
using NormBuckets = std::vector<std::vector<CartanClass>>;
NormBuckets norm_class_partition(const CartanContext& ctx);

/// All units of O_K / p^k O_K, by dense enumeration.
std::vector<CartanElement> enumerate_units(const CartanContext& ctx);
/// Multiplicative order of s (s must be a unit).
std::int64_t element_order(const CartanContext& ctx, CartanElement s);

/// Number of cusps of X+_ns(p^k): p^(k-1) (p-1) / 2.
std::int64_t cusp_count_plus(std::int64_t p, int k);
/// Genus of X+_ns(p).
std::int64_t genus_plus(std::int64_t p);

}  // namespace ncartan
