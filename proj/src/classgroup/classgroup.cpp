#include "ncartan/classgroup.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "ncartan/errors.hpp"
#include "ncartan/simd/kernels.hpp"

namespace ncartan {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

BigInteger pow_big(std::int64_t base, long exp) {
  BigInteger r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

// (p^2-1)/24 * p^(k-1) * e
BigInteger order_denominator(std::int64_t p, int k, const BigInteger& e) {
  BigInteger q = BigInteger(p) * p - 1;
  ensure(q % 24 == 0, "24 does not divide p^2 - 1");
  return q / 24 * pow_big(p, k - 1) * e;
}

// log|x| for a big integer, without overflowing a double.
double log_abs(const BigInteger& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

BigRational circulant_det(const CartanContext& ctx, const StickelbergerData& data) {
  CirculantMatrix c{data.theta_prime.coeffs()};
  return det_exact(c, BigInteger(12) * pow_big(ctx.p(), ctx.k()));
}

BigInteger order_from_det(const CartanContext& ctx, const StickelbergerData& data, const BigRational& det) {
  ensure(sgn(det) != 0, "A_theta' is singular");
  ensure(is_integer(det), "det A_theta' is not an integer: " + det.get_str());
  const BigInteger num = abs(det.get_num());
  const BigInteger den = order_denominator(ctx.p(), ctx.k(), data.e);
  ensure(num % den == 0, "|det A_theta'| = " + num.get_str() + " is not divisible by " + den.get_str());
  return num / den;
}

}  // namespace

IntMatrix unit_lattice_generators(const StickelbergerData& data) {
  const std::size_t n = data.theta.size();
  ensure(n >= 1, "empty Stickelberger element");
  IntMatrix m(n, n - 1);
  auto put_row = [&](std::size_t r, const GroupRingElement& x) {
    ensure(x.is_integral(), "generator row " + std::to_string(r) + " of R_d theta is not integral");
    ensure(sgn(x.degree()) == 0, "generator row " + std::to_string(r) + " is not in R_0");
    // sum c_i w^i with sum c_i = 0 equals sum_{i>=1} c_i (w^i - 1).
    for (std::size_t i = 1; i < n; ++i) m(r, i - 1) = x[i].get_num();
  };
  for (std::size_t j = 1; j < n; ++j) put_row(j - 1, data.theta.shifted(static_cast<std::int64_t>(j)) - data.theta);
  put_row(n - 1, data.theta * BigRational(data.d));
  return m;
}

std::vector<BigInteger> structure(const StickelbergerData& data) {
  std::vector<BigInteger> out;
  const IntMatrix gens = unit_lattice_generators(data);
  const std::vector<BigInteger> diag = smith_normal_form(gens);
  ensure(diag.size() == gens.cols(), "R_d theta does not have full rank in R_0");
  for (const auto& d : diag) {
    if (d > 1) out.push_back(d);
  }
  return out;
}

std::vector<BigInteger> structure(const CartanContext& ctx) { return structure(compute_stickelberger(ctx)); }

BigInteger order(const CartanContext& ctx, const StickelbergerData& data) {
  return order_from_det(ctx, data, circulant_det(ctx, data));
}

BigInteger order(const CartanContext& ctx) { return order(ctx, compute_stickelberger(ctx)); }

FloatCrosscheck float_crosscheck_report(const CartanContext& ctx, const StickelbergerData& data, double tol) {
  FloatCrosscheck r;
  const std::size_t n = data.theta_prime.size();
  std::vector<double> coeffs(n), logs(n);
  for (std::size_t j = 0; j < n; ++j) coeffs[j] = data.theta_prime[j].get_d();
  simd::circulant_log_abs_eigenvalues(coeffs, logs);

  const BigRational det = circulant_det(ctx, data);
  r.log_det_exact = log_abs(det.get_num()) - log_abs(det.get_den());
  r.log_det_eigen = 0;
  for (double x : logs) r.log_det_eigen += x;
  r.trivial_eigenvalue = 0;
  for (double c : coeffs) r.trivial_eigenvalue += c;
  r.expected_degree = expected_degree_theta_prime(ctx.p(), ctx.k()).get_d();

  auto close = [tol](double a, double b) { return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b)); };
  r.passed = close(r.log_det_eigen, r.log_det_exact) && close(r.trivial_eigenvalue, r.expected_degree);
  return r;
}

bool float_crosscheck(const CartanContext& ctx, double tol) {
  return float_crosscheck_report(ctx, compute_stickelberger(ctx), tol).passed;
}

ClassGroupResult compute_class_group(const CartanContext& ctx, const ClassGroupOptions& options) {
  ClassGroupResult r;
  r.p = ctx.p();
  r.k = ctx.k();
  r.epsilon = ctx.epsilon();
  r.w = ctx.generator();
  r.cusps = cusp_count_plus(ctx.p(), ctx.k());
  if (ctx.k() == 1) r.genus = genus_plus(ctx.p());

  auto t0 = std::chrono::steady_clock::now();
  const StickelbergerData data = compute_stickelberger(ctx);
  r.timings.stickelberger_ms = elapsed_ms(t0);

  t0 = std::chrono::steady_clock::now();
  r.order = order(ctx, data);
  r.timings.determinant_ms = elapsed_ms(t0);

  if (options.structure) {
    t0 = std::chrono::steady_clock::now();
    r.invariant_factors = structure(data);
    r.timings.structure_ms = elapsed_ms(t0);
    BigInteger prod = 1;
    for (const auto& f : *r.invariant_factors) prod *= f;
    ensure(prod == r.order, "invariant factors multiply to " + prod.get_str() + ", order is " + r.order.get_str());
  }

  if (options.factor) {
    t0 = std::chrono::steady_clock::now();
    r.factorization = factorize(r.order, options.budget);
    r.timings.factor_ms = elapsed_ms(t0);
    ensure(r.factorization.value() == r.order, "factorization does not reassemble to the order");
  }
  return r;
}

}  // namespace ncartan
