#include <algorithm>
#include <map>
#include <sstream>

#include "ncartan/arith.hpp"

namespace ncartan {

namespace {

std::vector<unsigned long> small_primes(unsigned long bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<unsigned long> primes;
  for (unsigned long i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (unsigned long j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

struct Accumulator {
  std::map<BigInteger, std::pair<unsigned, Certainty>> found;

  void add(const BigInteger& p, unsigned e, Certainty c) {
    auto [it, inserted] = found.try_emplace(p, e, c);
    if (!inserted) it->second.first += e;
  }
};

void split(const BigInteger& m, unsigned multiplicity, const FactorBudget& budget, Accumulator& acc) {
  if (m == 1) return;
  switch (is_prime(m)) {
    case Primality::proven:
      acc.add(m, multiplicity, Certainty::proven_prime);
      return;
    case Primality::probable:
      acc.add(m, multiplicity, Certainty::probable_prime);
      return;
    case Primality::composite:
      break;
  }
  if (auto pp = perfect_power(m)) {
    split(pp->first, multiplicity * pp->second, budget, acc);
    return;
  }
  auto f = pollard_brent(m, budget.rho_iterations);
  if (!f) {
    acc.add(m, multiplicity, Certainty::unsplit_composite);
    return;
  }
  BigInteger cofactor = m / *f;
  split(*f, multiplicity, budget, acc);
  split(cofactor, multiplicity, budget, acc);
}

}  // namespace

std::optional<std::pair<BigInteger, unsigned>> perfect_power(const BigInteger& n) {
  if (n < 4) return std::nullopt;
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  // Try the largest exponent first so the returned base is not itself a power.
  for (unsigned long k = bits; k >= 2; --k) {
    BigInteger root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0 && root > 1) {
      return std::make_pair(root, static_cast<unsigned>(k));
    }
  }
  return std::nullopt;
}

std::optional<BigInteger> pollard_brent(const BigInteger& n, std::uint64_t max_iterations,
                                        unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return BigInteger(2);
  std::uint64_t spent = 0;
  for (unsigned long c = seed; spent < max_iterations; ++c) {
    const BigInteger cc = c;
    auto step = [&](BigInteger& x) {
      x = x * x + cc;
      mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    };
    BigInteger y = 2, x, ys, q = 1, g = 1;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    while (g == 1 && spent < max_iterations) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          step(y);
          BigInteger diff = x - y;
          q = q * abs(diff);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
        spent += lim;
      }
      r *= 2;
    }
    if (g == n) {
      // The batch overshot: walk back one step at a time.
      do {
        step(ys);
        BigInteger diff = x - ys;
        diff = abs(diff);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        ++spent;
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return std::nullopt;
}

Factorization factorize(const BigInteger& n, const FactorBudget& budget) {
  if (n < 1) throw std::domain_error("factorize: n must be positive");
  Accumulator acc;
  BigInteger m = n;
  for (unsigned long p : small_primes(static_cast<unsigned long>(budget.trial_bound))) {
    if (m == 1) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) acc.add(BigInteger(p), e, Certainty::proven_prime);
  }
  split(m, 1, budget, acc);

  Factorization out;
  for (const auto& [p, info] : acc.found) out.entries.push_back({p, info.first, info.second});
  return out;
}

BigInteger Factorization::value() const {
  BigInteger v = 1;
  for (const auto& e : entries) {
    BigInteger t;
    mpz_pow_ui(t.get_mpz_t(), e.prime.get_mpz_t(), e.exponent);
    v *= t;
  }
  return v;
}

bool Factorization::complete() const {
  return std::none_of(entries.begin(), entries.end(),
                      [](const PrimePower& e) { return e.certainty == Certainty::unsplit_composite; });
}

std::string Factorization::to_string() const {
  if (entries.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) os << " * ";
    os << entries[i].prime.get_str();
    if (entries[i].exponent != 1) os << '^' << entries[i].exponent;
  }
  return os.str();
}

const char* to_string(Certainty c) {
  switch (c) {
    case Certainty::proven_prime:
      return "proven";
    case Certainty::probable_prime:
      return "probable";
    case Certainty::unsplit_composite:
      return "composite";
  }
  return "?";
}

std::optional<Certainty> certainty_from_string(const std::string& s) {
  if (s == "proven") return Certainty::proven_prime;
  if (s == "probable") return Certainty::probable_prime;
  if (s == "composite") return Certainty::unsplit_composite;
  return std::nullopt;
}

}  // namespace ncartan
