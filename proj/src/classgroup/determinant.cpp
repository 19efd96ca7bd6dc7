#include <string>

#include "ncartan/classgroup.hpp"
#include "ncartan/errors.hpp"

namespace ncartan {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

const BigRational& CirculantMatrix::entry(std::size_t i, std::size_t j) const {
  const std::size_t n = size();
  return first_row[(j + n - i % n) % n];
}

BigInteger bareiss_determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  BigInteger prev = 1;
  BigInteger t;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(m(r, k)) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // m(i,j) = (m(i,j) m(k,k) - m(i,k) m(k,j)) / prev, exactly.
        t = m(i, j) * m(k, k);
        mpz_submul(t.get_mpz_t(), m(i, k).get_mpz_t(), m(k, j).get_mpz_t());
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

BigRational det_exact(const CirculantMatrix& c, const BigInteger& scale) {
  const std::size_t n = c.size();
  if (sgn(scale) <= 0) throw InputError("det_exact: scale must be positive");
  std::vector<BigInteger> row(n);
  for (std::size_t j = 0; j < n; ++j) {
    const BigRational x = c.first_row[j] * scale;
    ensure(is_integer(x), "det_exact: scale " + scale.get_str() + " does not clear the denominator of " +
                              c.first_row[j].get_str());
    row[j] = x.get_num();
  }
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = row[(j + n - i) % n];
  }
  BigInteger scale_n;
  mpz_pow_ui(scale_n.get_mpz_t(), scale.get_mpz_t(), n);
  return make_rational(bareiss_determinant(std::move(m)), scale_n);
}

}  // namespace ncartan
