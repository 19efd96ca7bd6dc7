#include "ncartan/crosscheck.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "ncartan/errors.hpp"

namespace ncartan {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(s);
  while (std::getline(is, field, sep)) out.push_back(trim(field));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::int64_t parse_small(const std::string& s, const char* what) {
  if (!all_digits(s) || s.size() > 12) throw InputError(std::string(what) + " '" + s + "' is not a small positive integer");
  return std::stoll(s);
}

}  // namespace

BigInteger parse_value(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw InputError("empty value");
  BigInteger result = 1;
  for (const std::string& factor : split(t, '*')) {
    const auto caret = factor.find('^');
    const std::string base = caret == std::string::npos ? factor : factor.substr(0, caret);
    if (!all_digits(base)) throw InputError("malformed factor '" + factor + "'");
    BigInteger b(base);
    unsigned long exp = 1;
    if (caret != std::string::npos) {
      const std::string e = factor.substr(caret + 1);
      if (!all_digits(e) || e.size() > 6) throw InputError("malformed exponent in '" + factor + "'");
      exp = std::stoul(e);
    }
    BigInteger power;
    mpz_pow_ui(power.get_mpz_t(), b.get_mpz_t(), exp);
    result *= power;
  }
  return result;
}

LoadResult parse_records(std::istream& in) {
  LoadResult out;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!header_seen) {
      std::string compact;
      for (char c : t) {
        if (c != ' ') compact.push_back(c);
      }
      if (compact != "p,q,label,value") {
        throw InputError("line " + std::to_string(lineno) + ": expected header 'p,q,label,value'");
      }
      header_seen = true;
      continue;
    }
    try {
      const auto fields = split(t, ',');
      if (fields.size() != 4) throw InputError("expected 4 fields, got " + std::to_string(fields.size()));
      CrosscheckRecord r;
      r.line = lineno;
      r.p = parse_small(fields[0], "p");
      if (r.p < 5 || !is_prime_u64(static_cast<std::uint64_t>(r.p))) throw InputError("p = " + fields[0] + " is not a prime >= 5");
      if (fields[1] != "*") {
        const std::int64_t q = parse_small(fields[1], "q");
        if (!is_prime_u64(static_cast<std::uint64_t>(q))) throw InputError("q = " + fields[1] + " is not prime");
        if (q % r.p != 1 && q % r.p != r.p - 1) {
          throw InputError("q = " + fields[1] + " is not +-1 mod " + fields[0]);
        }
        r.q = q;
      }
      if (fields[2].empty()) throw InputError("empty label");
      r.label = fields[2];
      r.value = parse_value(fields[3]);
      if (r.value < 1) throw InputError("value must be >= 1");
      out.records.push_back(std::move(r));
    } catch (const InputError& e) {
      out.rejected.push_back({lineno, e.what()});
    }
  }
  if (!header_seen) throw InputError("missing header 'p,q,label,value'");
  return out;
}

LoadResult load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  return parse_records(in);
}

HarnessReport gcd_harness(std::int64_t p, const std::vector<CrosscheckRecord>& records, const BigInteger& order) {
  if (sgn(order) <= 0) throw InputError("order must be positive");
  HarnessReport rep;
  rep.p = p;
  rep.order = order;
  std::map<std::string, LabelGcd> by_label;
  for (const auto& r : records) {
    if (r.p != p) continue;
    LabelGcd& g = by_label[r.label];
    g.label = r.label;
    g.gcd = gcd(g.gcd, r.value);
    ++g.count;
    if (r.label == "J" && r.q) {
      const bool div = r.value % order == 0;
      rep.divisibility.push_back({*r.q, r.value, div});
      rep.all_divisible = rep.all_divisible && div;
    }
  }
  if (by_label.empty()) throw InputError("no records for p = " + std::to_string(p));

  BigInteger product = 1;
  bool any_newform = false;
  for (auto& [label, g] : by_label) {
    rep.labels.push_back(g);
    if (label == "J") {
      rep.j_gcd = g.gcd;
      rep.j_ratio = make_rational(g.gcd, order);
    } else {
      product *= g.gcd;
      any_newform = true;
    }
  }
  if (any_newform) {
    rep.newform_product = product;
    rep.newform_ratio = make_rational(product, order);
  }
  return rep;
}

std::optional<BigInteger> published_j_ratio(std::int64_t p) {
  if (p >= 11 && p <= 23) return BigInteger(1);
  if (p == 29 || p == 31) return BigInteger(4);
  return std::nullopt;
}

std::vector<std::int64_t> record_primes(const std::vector<CrosscheckRecord>& records) {
  std::set<std::int64_t> ps;
  for (const auto& r : records) ps.insert(r.p);
  return {ps.begin(), ps.end()};
}

}  // namespace ncartan
