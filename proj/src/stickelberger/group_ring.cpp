#include <algorithm>
#include <numeric>
#include <sstream>

#include "ncartan/errors.hpp"
#include "ncartan/stickelberger.hpp"

namespace ncartan {

GroupRingElement::GroupRingElement(std::size_t n) : coeffs_(n, BigRational(0)) {}

GroupRingElement::GroupRingElement(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) {}

GroupRingElement GroupRingElement::basis(std::size_t n, std::int64_t j) {
  GroupRingElement e(n);
  e[static_cast<std::size_t>(mod(j, static_cast<std::int64_t>(n)))] = 1;
  return e;
}

BigRational GroupRingElement::degree() const {
  return std::accumulate(coeffs_.begin(), coeffs_.end(), BigRational(0));
}

bool GroupRingElement::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigRational& c) { return is_integer(c); });
}

bool GroupRingElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigRational& c) { return sgn(c) == 0; });
}

GroupRingElement GroupRingElement::shifted(std::int64_t j) const {
  const auto n = static_cast<std::int64_t>(size());
  GroupRingElement out(size());
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(mod(i + j, n))] = coeffs_[static_cast<std::size_t>(i)];
  return out;
}

BigInteger GroupRingElement::denominator_lcm() const {
  BigInteger l = 1;
  for (const auto& c : coeffs_) l = lcm(l, BigInteger(c.get_den()));
  return l;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  ensure(size() == o.size(), "group ring size mismatch");
  for (std::size_t j = 0; j < size(); ++j) coeffs_[j] += o.coeffs_[j];
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
  ensure(size() == o.size(), "group ring size mismatch");
  for (std::size_t j = 0; j < size(); ++j) coeffs_[j] -= o.coeffs_[j];
  return *this;
}

GroupRingElement& GroupRingElement::operator*=(const BigRational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  ensure(a.size() == b.size(), "group ring size mismatch");
  const std::size_t n = a.size();
  GroupRingElement out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t t = i + j < n ? i + j : i + j - n;
      out[t] += a[i] * b[j];
    }
  }
  return out;
}

std::string GroupRingElement::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < size(); ++j) os << (j ? ", " : "") << coeffs_[j].get_str();
  os << ')';
  return os.str();
}

}  // namespace ncartan
