#pragma once

// External point-count data and the gcd divisibility harness.
//
// CSV: header `p,q,label,value`, `#` comments, blank lines ignored. value is
// INT or INT('^'INT)?('*'INT('^'INT)?)*. q = `*` marks a row whose value is
// already a gcd over a range of q (used for per-newform data).

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncartan/arith.hpp"

namespace ncartan {

struct CrosscheckRecord {
  std::int64_t p = 0;
  std::optional<std::int64_t> q;  // nullopt for an aggregate row
  std::string label;
  BigInteger value;
  std::size_t line = 0;

  bool operator==(const CrosscheckRecord&) const = default;
};

struct LoadDiagnostic {
  std::size_t line = 0;
  std::string message;
};

struct LoadResult {
  std::vector<CrosscheckRecord> records;
  std::vector<LoadDiagnostic> rejected;
};

/// Parses a value expression such as "2^2*3*11". Throws InputError.
BigInteger parse_value(const std::string& text);

/// Bad rows are rejected with a line-numbered diagnostic; loading continues.
LoadResult parse_records(std::istream& in);
/// Throws InputError when the file cannot be read or the header is wrong.
LoadResult load_records(const std::string& path);

struct LabelGcd {
  std::string label;
  BigInteger gcd;
  std::size_t count = 0;
};

struct DivisibilityRow {
  std::int64_t q = 0;
  BigInteger value;
  bool divisible = false;
};

struct HarnessReport {
  std::int64_t p = 0;
  BigInteger order;
  std::vector<LabelGcd> labels;  // sorted by label
  std::optional<BigInteger> j_gcd;
  std::optional<BigRational> j_ratio;  // j_gcd / order
  std::optional<BigInteger> newform_product;
  std::optional<BigRational> newform_ratio;
  std::vector<DivisibilityRow> divisibility;  // per-q J rows
  bool all_divisible = true;
};

/// Throws InputError when no record has the given p.
HarnessReport gcd_harness(std::int64_t p, const std::vector<CrosscheckRecord>& records, const BigInteger& order);

/// The J-level gcd / order ratio the bundled data is known to give: 1 for
/// 11 <= p <= 23, 4 for p in {29, 31}.
std::optional<BigInteger> published_j_ratio(std::int64_t p);

/// Distinct p values in ascending order.
std::vector<std::int64_t> record_primes(const std::vector<CrosscheckRecord>& records);

}  // namespace ncartan
