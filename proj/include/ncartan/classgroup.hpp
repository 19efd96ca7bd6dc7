#pragma once

// Order and structure of the cuspidal class group of X+_ns(p^k).
//
// Two independent routes to the order: the circulant determinant of theta'
// (Bareiss) and the Smith normal form of the lattice R_d theta inside R_0.
// For k = 1 a third route evaluates the explicit Bernoulli determinant over
// F_{p^2}.

#include <cstdint>
#include <optional>
#include <vector>

#include "ncartan/arith.hpp"
#include "ncartan/cartan.hpp"
#include "ncartan/stickelberger.hpp"

namespace ncartan {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInteger& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInteger& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInteger> data_;
};

/// Entry (i, j) is first_row[(j - i) mod n].
struct CirculantMatrix {
  std::vector<BigRational> first_row;

  std::size_t size() const { return first_row.size(); }
  const BigRational& entry(std::size_t i, std::size_t j) const;
};

/// Fraction-free elimination with row pivoting. Square matrices only.
BigInteger bareiss_determinant(IntMatrix m);

/// det(m) computed as det(scale * m) / scale^n. Throws InvariantViolation
/// when scale does not clear the denominators.
BigRational det_exact(const CirculantMatrix& m, const BigInteger& scale);

/// Nonzero diagonal of the Smith normal form, d_1 | d_2 | ... (units
/// included). Pivots on the entry of smallest magnitude.
std::vector<BigInteger> smith_normal_form(IntMatrix m);

/// Rows (w^j - 1) theta for j = 1..n-1, then d theta; coordinates on the
/// basis w^i - 1 (i = 1..n-1) of R_0. Asserts every row is integral.
IntMatrix unit_lattice_generators(const StickelbergerData& data);

/// Invariant factors > 1 of R_0 / R_d theta.
std::vector<BigInteger> structure(const CartanContext& ctx);
std::vector<BigInteger> structure(const StickelbergerData& data);

/// |det A_theta'| / ((p^2-1)/24 * p^(k-1) * e), exact division asserted.
BigInteger order(const CartanContext& ctx);
BigInteger order(const CartanContext& ctx, const StickelbergerData& data);

struct FloatCrosscheck {
  double log_det_exact = 0;
  double log_det_eigen = 0;
  double trivial_eigenvalue = 0;
  double expected_degree = 0;
  bool passed = false;
};

/// Compares sum_m log|lambda_m| with log|det A_theta'|, and lambda_0 with
/// deg theta', both to relative tolerance tol.
FloatCrosscheck float_crosscheck_report(const CartanContext& ctx, const StickelbergerData& data, double tol = 1e-9);
bool float_crosscheck(const CartanContext& ctx, double tol = 1e-9);

/// The order for k = 1 from the (p-1)/2 square Bernoulli determinant over
/// F_{p^2}, by rational Gaussian elimination.
BigInteger bernoulli_formula_k1(std::int64_t p);

struct Timings {
  double stickelberger_ms = 0;
  double determinant_ms = 0;
  double structure_ms = 0;
  double factor_ms = 0;
};

struct ClassGroupResult {
  std::int64_t p = 0;
  int k = 0;
  std::int64_t epsilon = 0;
  std::int64_t w = 0;
  BigInteger order;
  Factorization factorization;
  std::optional<std::vector<BigInteger>> invariant_factors;
  std::optional<std::int64_t> genus;  // k = 1 only
  std::int64_t cusps = 0;
  Timings timings;
};

struct ClassGroupOptions {
  bool factor = true;
  bool structure = false;
  FactorBudget budget{};
};

/// Asserts that the invariant factors multiply to the order and that the
/// factorization reassembles to it.
ClassGroupResult compute_class_group(const CartanContext& ctx, const ClassGroupOptions& options = {});

}  // namespace ncartan
