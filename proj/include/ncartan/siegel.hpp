#pragma once

// Numerical Klein forms and Siegel functions as q-products, in double
// precision. Values carry a root-of-unity ambiguity from the choice of lift of
// a, so every check here compares moduli, or ratios that can only be +-1.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ncartan/cartan.hpp"

namespace ncartan {

using Complex = std::complex<double>;

struct KleinIndex {
  double a1 = 0;
  double a2 = 0;
};

struct Matrix2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  bool operator==(const Matrix2&) const = default;
  std::int64_t det() const { return a * d - b * c; }
  /// (a tau + b) / (c tau + d)
  Complex act(Complex tau) const;
  /// c tau + d
  Complex automorphy(Complex tau) const;
  std::string to_string() const;
};

/// Row vector times matrix: (a1, a2) gamma.
KleinIndex operator*(KleinIndex x, const Matrix2& g);

/// Smallest product length with |q|^(terms - ceil|a1|) < tol. Throws
/// InputError when Im tau <= 0.
int required_terms(double a1, Complex tau, double tol = 1e-12);

/// k_a(tau) from its product expansion, valid for any real a (no reduction),
/// so k_{-a} = -k_a and the SL_2(Z) law hold. Throws InputError when a is in
/// Z^2 or `terms` is below required_terms.
Complex klein_eval(KleinIndex a, Complex tau, int terms = 200);

/// g_a = k_a eta^2 after reducing a to [0,1)^2.
Complex siegel_eval(KleinIndex a, Complex tau, int terms = 200);

/// An integer matrix of determinant 1 congruent to `target` mod `modulus`,
/// with |c| as small as possible. Throws InvariantViolation on failure.
Matrix2 lift_to_sl2z(const Matrix2& target, std::int64_t modulus);

/// M_s = (a b; eps b a) for s = a + b sqrt(eps), and M_s C = (a -b; eps b -a).
Matrix2 cartan_matrix(const CartanContext& ctx, CartanElement s);
Matrix2 cartan_coset_matrix(const CartanContext& ctx, CartanElement s);

/// tau = -d/c + i/|c|, so Im tau = Im gamma tau and c tau + d = +-i.
Complex balanced_tau(const Matrix2& g);

struct ThWeightCheck {
  Complex ratio;        // T(gamma tau) (c tau + d)^(p+1) / T(tau)
  int sign = 0;         // sign of the real part
  int expected_sign = 0;
  bool real = false;    // |ratio -+ 1| within tolerance
  bool passed = false;
};

/// Evaluates T+_h = prod of k_[t] over the bucket of w^i at tau and gamma tau.
/// The expected sign is +1 on the Cartan group, and on the other coset
/// +1 for p = 3 mod 4 and -1 for p = 1 mod 4. k = 1 only.
ThWeightCheck check_Th_weight(const CartanContext& ctx, std::int64_t i, const Matrix2& gamma, Complex tau,
                              double tol = 1e-6);

struct SlopeFit {
  double a1 = 0;
  double fitted = 0;    // slope of log|g| against -2 pi y
  double expected = 0;  // B_2(<a1>) / 2
  bool passed = false;
};

/// Least-squares slope of log|g_(a1,0)(iy)| over the given heights.
SlopeFit order_at_infinity_fit(double a1, const std::vector<double>& heights = {10, 15, 20}, double rel_tol = 0.01);

struct AnalyticCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Klein-form identities on the grid a in {(i/5, j/5)} \ Z^2,
/// tau in {i, i + 0.3, 2i}, gamma in {T, S}.
std::vector<AnalyticCheck> klein_grid_checks(double tol = 1e-8);
std::vector<AnalyticCheck> slope_checks();
/// T+_h sign checks at level p: every h against a Cartan lift and, when one
/// exists, a lift from the other coset of the normalizer.
std::vector<AnalyticCheck> sign_checks(std::int64_t p);

}  // namespace ncartan
