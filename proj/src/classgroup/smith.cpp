#include <algorithm>

#include "ncartan/classgroup.hpp"

namespace ncartan {

namespace {

// Nearest-integer quotient, which keeps remainders within |b|/2.
BigInteger round_div(const BigInteger& a, const BigInteger& b) {
  BigInteger q;
  BigInteger num = 2 * a + b;
  BigInteger den = 2 * b;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

bool find_min_pivot(const IntMatrix& m, std::size_t t, std::size_t& pi, std::size_t& pj) {
  const BigInteger* best = nullptr;
  for (std::size_t i = t; i < m.rows(); ++i) {
    for (std::size_t j = t; j < m.cols(); ++j) {
      const BigInteger& x = m(i, j);
      if (sgn(x) == 0) continue;
      if (!best || mpz_cmpabs(x.get_mpz_t(), best->get_mpz_t()) < 0) {
        best = &x;
        pi = i;
        pj = j;
        if (mpz_cmpabs_ui(x.get_mpz_t(), 1) == 0) return true;
      }
    }
  }
  return best != nullptr;
}

}  // namespace

std::vector<BigInteger> smith_normal_form(IntMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t steps = std::min(rows, cols);
  std::vector<BigInteger> diag;
  BigInteger q;
  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_min_pivot(m, t, pi, pj)) break;
    for (;;) {
      m.swap_rows(t, pi);
      m.swap_cols(t, pj);
      const BigInteger pivot = m(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(m(i, t)) == 0) continue;
        q = round_div(m(i, t), pivot);
        for (std::size_t j = t; j < cols; ++j) {
          if (sgn(m(t, j)) != 0) mpz_submul(m(i, j).get_mpz_t(), q.get_mpz_t(), m(t, j).get_mpz_t());
        }
        clean = clean && sgn(m(i, t)) == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(m(t, j)) == 0) continue;
        q = round_div(m(t, j), pivot);
        for (std::size_t i = t; i < rows; ++i) {
          if (sgn(m(i, t)) != 0) mpz_submul(m(i, j).get_mpz_t(), q.get_mpz_t(), m(i, t).get_mpz_t());
        }
        clean = clean && sgn(m(t, j)) == 0;
      }
      if (clean) break;
      // A nonzero remainder is smaller than the pivot; restart from it.
      find_min_pivot(m, t, pi, pj);
    }
    diag.push_back(abs(m(t, t)));
  }

  // diag(a, b) and diag(gcd, lcm) have the same cokernel.
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      BigInteger g = gcd(diag[i], diag[j]);
      BigInteger l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  }
  return diag;
}

}  // namespace ncartan
