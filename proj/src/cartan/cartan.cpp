#include "ncartan/cartan.hpp"

#include <string>

#include "ncartan/arith.hpp"
#include "ncartan/errors.hpp"
#include "ncartan/simd/kernels.hpp"

namespace ncartan {

namespace {

void require_level(std::int64_t p, int k) {
  if (p < 5 || !is_prime_u64(static_cast<std::uint64_t>(p))) {
    throw InputError("p must be a prime >= 5 (got " + std::to_string(p) + ")");
  }
  if (k < 1) throw InputError("k must be >= 1");
  // p^k must stay well inside int32 for the residue tables.
  std::int64_t m = 1;
  for (int i = 0; i < k; ++i) {
    m *= p;
    if (m > (std::int64_t{1} << 30)) throw InputError("p^k too large");
  }
}

}  // namespace

bool is_squarefree(std::int64_t n) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % (f * f) == 0) return false;
  }
  return true;
}

bool is_valid_epsilon(std::int64_t eps, std::int64_t p) {
  return is_squarefree(eps) && mod(eps, 4) == 3 && legendre(eps, p) == -1;
}

std::vector<std::int64_t> epsilon_candidates(std::int64_t p, std::size_t count) {
  std::vector<std::int64_t> out;
  if (count == 0) return out;
  if (is_valid_epsilon(-1, p)) out.push_back(-1);
  for (std::int64_t e = 3; out.size() < count; e += 4) {
    if (is_valid_epsilon(e, p)) out.push_back(e);
  }
  return out;
}

std::int64_t choose_epsilon(std::int64_t p) { return epsilon_candidates(p, 1).front(); }

bool generates_H(std::int64_t g, std::int64_t p, int k) {
  const std::int64_t m = ipow(p, static_cast<unsigned>(k));
  const std::int64_t n = (p - 1) * ipow(p, static_cast<unsigned>(k - 1)) / 2;
  if (mod(g, p) == 0) return false;
  for (std::int64_t q : prime_divisors(n)) {
    const std::int64_t r = pow_mod(g, static_cast<std::uint64_t>(n / q), m);
    if (r == 1 || r == m - 1) return false;
  }
  return true;
}

std::vector<std::int64_t> generators_H(std::int64_t p, int k, std::size_t count) {
  const std::int64_t m = ipow(p, static_cast<unsigned>(k));
  std::vector<std::int64_t> out;
  for (std::int64_t g = 1; g < m && out.size() < count; ++g) {
    if (generates_H(g, p, k)) out.push_back(g);
  }
  return out;
}

std::int64_t find_generator_H(std::int64_t p, int k) {
  require_level(p, k);
  return generators_H(p, k, 1).front();
}

CartanContext CartanContext::create(std::int64_t p, int k) {
  require_level(p, k);
  return CartanContext(p, k, choose_epsilon(p), find_generator_H(p, k));
}

CartanContext::CartanContext(std::int64_t p, int k, std::int64_t epsilon, std::int64_t generator)
    : p_(p), k_(k), epsilon_(epsilon) {
  require_level(p, k);
  if (!is_valid_epsilon(epsilon, p)) {
    throw InputError("eps = " + std::to_string(epsilon) +
                     " must be squarefree, = 3 mod 4 and a non-residue mod " + std::to_string(p));
  }
  modulus_ = ipow(p, static_cast<unsigned>(k));
  n_ = (p - 1) * (modulus_ / p) / 2;
  w_ = mod(generator, modulus_);
  if (!generates_H(w_, p, k)) {
    throw InputError(std::to_string(generator) + " does not generate (Z/p^k)^*/{+-1}");
  }
  dlog_.assign(static_cast<std::size_t>(modulus_), -1);
  powers_.resize(static_cast<std::size_t>(n_));
  std::int64_t x = 1;
  for (std::int64_t i = 0; i < n_; ++i) {
    powers_[static_cast<std::size_t>(i)] = x;
    dlog_[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(i);
    dlog_[static_cast<std::size_t>(modulus_ - x)] = static_cast<std::int32_t>(i);
    x = mul_mod(x, w_, modulus_);
  }
  ensure(x == 1 || x == modulus_ - 1, "generator power w^n is not +-1");
}

std::int64_t CartanContext::reduce(std::int64_t x) const { return mod(x, modulus_); }

std::optional<std::int64_t> CartanContext::h_index(std::int64_t x) const {
  const std::int32_t i = dlog_[static_cast<std::size_t>(reduce(x))];
  if (i < 0) return std::nullopt;
  return i;
}

std::int64_t CartanContext::h_element(std::int64_t i) const {
  return powers_[static_cast<std::size_t>(mod(i, n_))];
}

std::int64_t norm(const CartanContext& ctx, CartanElement s) {
  const std::int64_t m = ctx.modulus();
  return mod(mul_mod(s.a1, s.a1, m) - mul_mod(ctx.epsilon(), mul_mod(s.a2, s.a2, m), m), m);
}

std::int64_t trace_half(const CartanContext& ctx, CartanElement s) { return ctx.reduce(s.a1); }

CartanElement multiply(const CartanContext& ctx, CartanElement s, CartanElement t) {
  const std::int64_t m = ctx.modulus();
  const std::int64_t a1 = mul_mod(s.a1, t.a1, m) + mul_mod(ctx.epsilon(), mul_mod(s.a2, t.a2, m), m);
  const std::int64_t a2 = mul_mod(s.a1, t.a2, m) + mul_mod(s.a2, t.a1, m);
  return {mod(a1, m), mod(a2, m)};
}

CartanElement negate(const CartanContext& ctx, CartanElement s) { return {ctx.reduce(-s.a1), ctx.reduce(-s.a2)}; }

CartanElement conjugate(const CartanContext& ctx, CartanElement s) { return {ctx.reduce(s.a1), ctx.reduce(-s.a2)}; }

bool is_invertible(const CartanContext& ctx, CartanElement s) {
  return mod(s.a1, ctx.p()) != 0 || mod(s.a2, ctx.p()) != 0;
}

CartanClass canonical_class(const CartanContext& ctx, CartanElement s) {
  if (!is_invertible(ctx, s)) throw InputError("canonical_class: element is not invertible");
  const std::int64_t m = ctx.modulus();
  const std::int64_t half = (m - 1) / 2;
  std::int64_t a1 = ctx.reduce(s.a1), a2 = ctx.reduce(s.a2);
  if (a1 > half || (a1 == 0 && a2 > half)) {
    a1 = mod(-a1, m);
    a2 = mod(-a2, m);
  }
  return {a1, a2};
}

NormBuckets norm_class_partition(const CartanContext& ctx) {
  const std::int64_t m = ctx.modulus();
  const std::int64_t half = (m - 1) / 2;
  const std::int64_t eps = ctx.reduce(ctx.epsilon());
  NormBuckets buckets(static_cast<std::size_t>(ctx.group_order()));
  const std::size_t bucket_size = static_cast<std::size_t>((ctx.p() + 1) * (m / ctx.p()));
  for (auto& b : buckets) b.reserve(bucket_size);

  std::vector<std::int32_t> row(static_cast<std::size_t>(m));
  for (std::int64_t a1 = 0; a1 <= half; ++a1) {
    simd::norm_row(mul_mod(a1, a1, m), eps, static_cast<std::int32_t>(m), row);
    const std::int64_t a2_end = a1 == 0 ? half : m - 1;
    for (std::int64_t a2 = 0; a2 <= a2_end; ++a2) {
      if (a1 % ctx.p() == 0 && a2 % ctx.p() == 0) continue;
      const auto i = ctx.h_index(row[static_cast<std::size_t>(a2)]);
      ensure(i.has_value(), "norm of a unit is not a unit");
      buckets[static_cast<std::size_t>(*i)].push_back({a1, a2});
    }
  }
  for (const auto& b : buckets) ensure(b.size() == bucket_size, "norm bucket has the wrong size");
  return buckets;
}

std::vector<CartanElement> enumerate_units(const CartanContext& ctx) {
  std::vector<CartanElement> out;
  const std::int64_t m = ctx.modulus();
  for (std::int64_t a1 = 0; a1 < m; ++a1) {
    for (std::int64_t a2 = 0; a2 < m; ++a2) {
      if (is_invertible(ctx, {a1, a2})) out.push_back({a1, a2});
    }
  }
  return out;
}

std::int64_t element_order(const CartanContext& ctx, CartanElement s) {
  if (!is_invertible(ctx, s)) throw InputError("element_order: not a unit");
  const CartanElement one{1, 0};
  CartanElement x = ctx.reduce(s.a1) == 1 && ctx.reduce(s.a2) == 0 ? one : s;
  std::int64_t order = 1;
  while (!(x == one)) {
    x = multiply(ctx, x, s);
    ++order;
  }
  return order;
}

std::int64_t cusp_count_plus(std::int64_t p, int k) {
  if (p < 5 || k < 1) throw InputError("cusp_count_plus: need p >= 5, k >= 1");
  return ipow(p, static_cast<unsigned>(k - 1)) * (p - 1) / 2;
}

std::int64_t genus_plus(std::int64_t p) {
  if (p < 5 || !is_prime_u64(static_cast<std::uint64_t>(p))) {
    throw InputError("p must be a prime >= 5 (got " + std::to_string(p) + ")");
  }
  const std::int64_t numerator = p * p - 10 * p + 23 + 6 * legendre(-1, p) + 4 * legendre(-3, p);
  ensure(numerator % 24 == 0 && numerator >= 0, "genus formula is not a non-negative integer");
  return numerator / 24;
}

}  // namespace ncartan
