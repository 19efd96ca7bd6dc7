#include "ncartan/app/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "ncartan/app/output.hpp"
#include "ncartan/cartan.hpp"
#include "ncartan/classgroup.hpp"
#include "ncartan/crosscheck.hpp"
#include "ncartan/errors.hpp"
#include "ncartan/siegel.hpp"
#include "ncartan/stickelberger.hpp"

#ifndef NCARTAN_VERSION
#define NCARTAN_VERSION "dev"
#endif
#ifndef NCARTAN_DATA_DIR
#define NCARTAN_DATA_DIR "data"
#endif

namespace ncartan::app {

namespace {

void validate_prime(std::int64_t p) {
  if (p < 5 || !is_prime_u64(static_cast<std::uint64_t>(p))) throw InputError("p must be a prime ≥ 5");
}

void validate_level(std::int64_t p, int k, const Limits& limits) {
  validate_prime(p);
  if (k < 1) throw InputError("k must be ≥ 1");
  std::int64_t m = 1;
  for (int i = 0; i < k; ++i) {
    m *= p;
    if (m > limits.max_modulus && !limits.force) {
      throw InputError("p^k exceeds the size guard " + std::to_string(limits.max_modulus) + " (use --force)");
    }
    if (m > (std::int64_t{1} << 30)) throw InputError("p^k too large");
  }
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void note_uncertain(const Factorization& f, std::int64_t p, std::ostream& err) {
  for (const auto& e : f.entries) {
    if (e.certainty == Certainty::probable_prime) {
      err << "note: p=" << p << ": factor " << e.prime.get_str() << " is a probable prime\n";
    } else if (e.certainty == Certainty::unsplit_composite) {
      err << "note: p=" << p << ": cofactor " << e.prime.get_str()
          << " is composite but was not split within the rho budget\n";
    }
  }
}

OutputRecord run_one(std::int64_t p, int k, bool structure, const Limits& limits) {
  const auto t0 = std::chrono::steady_clock::now();
  const CartanContext ctx = CartanContext::create(p, k);
  ClassGroupOptions opts;
  opts.factor = true;
  opts.structure = structure;
  opts.budget = limits.budget;
  OutputRecord r;
  r.result = compute_class_group(ctx, opts);
  r.version = NCARTAN_VERSION;
  r.elapsed_ms = ms_since(t0);
  return r;
}

class Reporter {
 public:
  explicit Reporter(std::ostream& out) : out_(out) {}

  void check(const std::string& name, bool ok, const std::string& detail = {}) {
    out_ << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) out_ << "  [" << detail << "]";
    out_ << '\n';
    failed_ += ok ? 0 : 1;
    ++total_;
  }

  // Runs a check whose failure is signalled by an InvariantViolation.
  void check_throws(const std::string& name, const std::function<std::string()>& body) {
    try {
      check(name, true, body());
    } catch (const InvariantViolation& e) {
      check(name, false, e.what());
    }
  }

  void info(const std::string& line) { out_ << "     " << line << '\n'; }
  int failed() const { return failed_; }
  int total() const { return total_; }

 private:
  std::ostream& out_;
  int failed_ = 0;
  int total_ = 0;
};

std::string join(const std::vector<std::int64_t>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
  return os.str();
}

}  // namespace

FactorBudget budget_from_env() {
  FactorBudget b;
  if (const char* s = std::getenv("NCARTAN_RHO_BUDGET"); s && *s) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0' || v == 0) throw InputError("NCARTAN_RHO_BUDGET must be a positive integer");
    b.rho_iterations = v;
  }
  return b;
}

std::string bundled_fixture_path() { return std::string(NCARTAN_DATA_DIR) + "/crosscheck_fixture.csv"; }

int guarded(const Streams& io, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InputError& e) {
    io.err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvariantViolation& e) {
    io.err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    io.err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

int cmd_order(std::int64_t p, int k, const OrderFlags& flags, const Limits& limits, const Streams& io) {
  return guarded(io, [&] {
    validate_level(p, k, limits);
    const OutputRecord r = run_one(p, k, flags.structure, limits);
    note_uncertain(r.result.factorization, p, io.err);
    if (flags.json) {
      io.out << to_json(r).dump() << '\n';
      return kOk;
    }
    io.out << (flags.factor ? r.result.factorization.to_string() : r.result.order.get_str()) << '\n';
    if (flags.structure) io.out << "structure: " << format_structure(*r.result.invariant_factors) << '\n';
    return kOk;
  });
}

int cmd_table(std::int64_t pmax, const TableFlags& flags, const Limits& limits, const Streams& io) {
  return guarded(io, [&] {
    if (pmax > limits.max_pmax && !limits.force) {
      throw InputError("pmax exceeds the size guard " + std::to_string(limits.max_pmax) + " (use --force)");
    }
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 5; p <= pmax; p += 2) {
      if (is_prime_u64(static_cast<std::uint64_t>(p))) primes.push_back(p);
    }
    for (std::int64_t p : primes) validate_level(p, 1, limits);

    std::vector<std::optional<OutputRecord>> results(primes.size());
    std::vector<std::string> errors(primes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < primes.size(); i = next++) {
        try {
          results[i] = run_one(primes[i], 1, false, limits);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
    };
    unsigned threads = 1;
    if (flags.parallel) threads = flags.threads ? flags.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(primes.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (!results[i]) throw InvariantViolation("p=" + std::to_string(primes[i]) + ": " + errors[i]);
    }
    if (!flags.json) io.out << "p | order | factorization\n";
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const OutputRecord& r = *results[i];
      note_uncertain(r.result.factorization, primes[i], io.err);
      if (flags.json) {
        io.out << to_json(r).dump() << '\n';
      } else {
        io.out << primes[i] << " | " << r.result.order.get_str() << " | " << r.result.factorization.to_string() << '\n';
      }
    }
    return kOk;
  });
}

int cmd_verify(std::int64_t p, int k, const VerifyFlags& flags, const Limits& limits, const Streams& io) {
  return guarded(io, [&] {
    validate_level(p, k, limits);
    Reporter rep(io.out);
    const CartanContext ctx = CartanContext::create(p, k);
    io.out << "level p=" << p << " k=" << k << " eps=" << ctx.epsilon() << " w=" << ctx.generator()
           << " |H|=" << ctx.group_order() << '\n';

    const NormBuckets buckets = norm_class_partition(ctx);
    rep.check("norm buckets have (p+1)p^(k-1) classes each", true);

    StickelbergerData data;
    rep.check_throws("Stickelberger element: sum a_i = 0, deg theta', d a_i integral, (w^j-1) theta integral", [&] {
      data = compute_stickelberger(ctx, buckets);
      return "deg theta' = " + data.theta_prime.degree().get_str() + ", d = " + std::to_string(data.d);
    });
    if (data.theta.size() == 0) {
      io.out << rep.failed() << " of " << rep.total() << " checks failed\n";
      return kVerifyFailed;
    }
    rep.info("lcm of denominators of a_i: " + GroupRingElement(data.a).denominator_lcm().get_str());

    bool somme = true;
    for (std::int64_t i = 0; i < ctx.group_order(); ++i) somme = somme && somme_identities_check(ctx, buckets, i);
    rep.check("quadratic sums over each norm class (three identities mod p^k)", somme);

    bool kl = true;
    for (const auto& bucket : buckets) {
      std::vector<std::pair<CartanClass, BigInteger>> family;
      for (const CartanClass& c : bucket) family.emplace_back(c, BigInteger(data.d));
      kl = kl && kl_unit_check(p, k, family);
    }
    rep.check("(G+_h)^d satisfies the Klein-form unit criterion for every h", kl);

    rep.check_throws("product of all G+_h has zero divisor", [&] {
      const auto div = divisor_of_unit(ctx, data, std::vector<BigInteger>(data.theta.size(), BigInteger(1)));
      ensure(div.is_zero(), "divisor is " + div.to_string());
      return std::string();
    });

    BigInteger ord;
    rep.check_throws("order: |det A_theta'| divisible by (p^2-1)/24 p^(k-1) e", [&] {
      ord = order(ctx, data);
      return "order " + ord.get_str();
    });

    {
      const FloatCrosscheck fc = float_crosscheck_report(ctx, data, 1e-9);
      std::ostringstream d;
      d.precision(12);
      d << "sum log|lambda| = " << fc.log_det_eigen << ", log|det| = " << fc.log_det_exact;
      rep.check("eigenvalue cross-check at 1e-9", fc.passed, d.str());
    }

    if (k == 1) {
      rep.check_throws("Bernoulli determinant formula agrees with the order", [&] {
        const BigInteger b = bernoulli_formula_k1(p);
        ensure(b == ord, "formula gives " + b.get_str() + ", order is " + ord.get_str());
        return std::string();
      });
    }

    if (flags.structure) {
      rep.check_throws("invariant factors multiply to the order", [&] {
        const auto inv = structure(data);
        BigInteger prod = 1;
        for (const auto& f : inv) prod *= f;
        ensure(prod == ord, "product " + prod.get_str() + " != order " + ord.get_str());
        return format_structure(inv);
      });
      const auto gens = generators_H(p, k, 2);
      if (gens.size() == 2) {
        rep.check_throws("order and structure independent of the generator of H", [&] {
          const CartanContext alt(p, k, ctx.epsilon(), gens[1]);
          const StickelbergerData d2 = compute_stickelberger(alt);
          ensure(order(alt, d2) == ord, "order changes with w");
          ensure(structure(d2) == structure(data), "structure changes with w");
          return "w = " + std::to_string(gens[0]) + ", " + std::to_string(gens[1]);
        });
      }
    }

    if (flags.eps_independence) {
      const auto eps = epsilon_candidates(p, 4);
      bool same = true;
      for (std::int64_t e : eps) {
        const CartanContext alt(p, k, e, ctx.generator());
        same = same && compute_stickelberger(alt).theta == data.theta;
      }
      rep.check("theta independent of eps", same, "eps in {" + join(eps) + "}");
    }

    if (flags.analytic) {
      for (const auto& c : klein_grid_checks(1e-8)) rep.check(c.name, c.passed, c.detail);
      for (const auto& c : slope_checks()) rep.check(c.name, c.passed, c.detail);
      std::vector<std::int64_t> levels{5, 7};
      if (k == 1 && p > 7 && p <= 13) levels.push_back(p);
      for (std::int64_t q : levels) {
        for (const auto& c : sign_checks(q)) rep.check(c.name, c.passed, c.detail);
      }
    }

    io.out << (rep.total() - rep.failed()) << " of " << rep.total() << " checks passed\n";
    return rep.failed() == 0 ? kOk : kVerifyFailed;
  });
}

int cmd_crosscheck(const std::optional<std::string>& path, std::optional<std::int64_t> p, bool expect_published,
                   const Streams& io) {
  return guarded(io, [&] {
    const std::string file = path.value_or(bundled_fixture_path());
    const bool published = expect_published || !path;
    const LoadResult loaded = load_records(file);
    for (const auto& d : loaded.rejected) io.err << file << ":" << d.line << ": rejected: " << d.message << '\n';

    std::vector<std::int64_t> primes = record_primes(loaded.records);
    if (p) {
      validate_prime(*p);
      if (std::find(primes.begin(), primes.end(), *p) == primes.end()) {
        throw InputError("no records for p = " + std::to_string(*p) + " in " + file);
      }
      primes = {*p};
    }
    if (primes.empty()) throw InputError("no usable records in " + file);

    Reporter rep(io.out);
    for (std::int64_t q : primes) {
      const BigInteger ord = order(CartanContext::create(q, 1));
      const HarnessReport h = gcd_harness(q, loaded.records, ord);
      io.out << "p=" << q << " order " << ord.get_str() << '\n';
      for (const auto& l : h.labels) {
        io.out << "  label " << l.label << ": " << l.count << " value(s), gcd " << l.gcd.get_str() << '\n';
      }
      if (h.j_ratio) io.out << "  J-level gcd / order = " << h.j_ratio->get_str() << '\n';
      if (h.newform_ratio) io.out << "  product of newform gcds / order = " << h.newform_ratio->get_str() << '\n';
      if (!h.divisibility.empty()) {
        std::size_t bad = 0;
        for (const auto& d : h.divisibility) bad += d.divisible ? 0 : 1;
        rep.check("p=" + std::to_string(q) + " order divides every listed |J(F_q)|", h.all_divisible,
                  std::to_string(h.divisibility.size() - bad) + " of " + std::to_string(h.divisibility.size()));
      }
      if (published) {
        if (const auto expected = published_j_ratio(q); expected && h.j_ratio) {
          rep.check("p=" + std::to_string(q) + " J-level gcd = " + expected->get_str() + " * order",
                    *h.j_ratio == BigRational(*expected));
        }
        if (h.newform_ratio) {
          rep.check("p=" + std::to_string(q) + " product of newform gcds = order", *h.newform_ratio == 1);
        }
      }
    }
    if (!loaded.rejected.empty()) io.out << loaded.rejected.size() << " row(s) rejected\n";
    return rep.failed() == 0 ? kOk : kVerifyFailed;
  });
}

int cmd_genus(std::int64_t p, const Streams& io) {
  return guarded(io, [&] {
    validate_prime(p);
    io.out << "genus " << genus_plus(p) << '\n' << "cusps " << cusp_count_plus(p, 1) << '\n';
    return kOk;
  });
}

}  // namespace ncartan::app
