#include "ncartan/siegel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <tuple>

#include "ncartan/arith.hpp"
#include "ncartan/errors.hpp"

namespace ncartan {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

bool is_integral(double x) { return std::fabs(x - std::round(x)) < 1e-15; }

double frac(double x) { return x - std::floor(x); }

double bernoulli2_d(double t) { return t * t - t + 1.0 / 6.0; }

// prod_{n=1}^{terms} (1 - q^n q_z)(1 - q^n / q_z)
Complex theta_product(Complex q, Complex qz, int terms) {
  Complex prod = 1.0, qn = 1.0;
  const Complex inv_qz = 1.0 / qz;
  for (int n = 1; n <= terms; ++n) {
    qn *= q;
    prod *= (1.0 - qn * qz) * (1.0 - qn * inv_qz);
  }
  return prod;
}

// prod_{n=1}^{terms} (1 - q^n)^2
Complex eta_product_sq(Complex q, int terms) {
  Complex prod = 1.0, qn = 1.0;
  for (int n = 1; n <= terms; ++n) {
    qn *= q;
    prod *= (1.0 - qn) * (1.0 - qn);
  }
  return prod;
}

void check_index(KleinIndex a) {
  if (is_integral(a.a1) && is_integral(a.a2)) throw InputError("Klein form index must not lie in Z^2");
}

int effective_terms(KleinIndex a, Complex tau, int terms) {
  const int need = required_terms(a.a1, tau);
  if (terms < need) {
    std::ostringstream os;
    os << "q-product does not converge to 1e-12 with " << terms << " terms at tau = " << tau << " (need " << need
       << ")";
    throw InputError(os.str());
  }
  return terms;
}

// Common factor e^{pi i a1 z}(e^{pi i z} - e^{-pi i z}) with z = a1 tau + a2.
Complex leading_factor(KleinIndex a, Complex z) {
  return std::exp(kPi * kI * a.a1 * z) * (std::exp(kPi * kI * z) - std::exp(-kPi * kI * z));
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

Complex Matrix2::act(Complex tau) const {
  return (static_cast<double>(a) * tau + static_cast<double>(b)) / automorphy(tau);
}

Complex Matrix2::automorphy(Complex tau) const { return static_cast<double>(c) * tau + static_cast<double>(d); }

std::string Matrix2::to_string() const {
  std::ostringstream os;
  os << '(' << a << ' ' << b << "; " << c << ' ' << d << ')';
  return os.str();
}

KleinIndex operator*(KleinIndex x, const Matrix2& g) {
  return {x.a1 * static_cast<double>(g.a) + x.a2 * static_cast<double>(g.c),
          x.a1 * static_cast<double>(g.b) + x.a2 * static_cast<double>(g.d)};
}

int required_terms(double a1, Complex tau, double tol) {
  if (!(tau.imag() > 0)) throw InputError("tau must lie in the upper half plane");
  const double log_q = -2.0 * kPi * tau.imag();
  const double shift = std::ceil(std::fabs(a1));
  return static_cast<int>(std::floor(std::log(tol) / log_q + shift)) + 1;
}

Complex klein_eval(KleinIndex a, Complex tau, int terms) {
  check_index(a);
  terms = effective_terms(a, tau, terms);
  const Complex z = a.a1 * tau + a.a2;
  const Complex q = std::exp(2.0 * kPi * kI * tau);
  const Complex qz = std::exp(2.0 * kPi * kI * z);
  return leading_factor(a, z) / (2.0 * kPi * kI) * theta_product(q, qz, terms) / eta_product_sq(q, terms);
}

Complex siegel_eval(KleinIndex a, Complex tau, int terms) {
  check_index(a);
  const KleinIndex r{frac(a.a1), frac(a.a2)};
  terms = effective_terms(r, tau, terms);
  const Complex z = r.a1 * tau + r.a2;
  const Complex q = std::exp(2.0 * kPi * kI * tau);
  const Complex qz = std::exp(2.0 * kPi * kI * z);
  // k_a * eta^2 with eta^2 = 2 pi i q^(1/12) prod (1 - q^n)^2; the 2 pi i
  // and the eta product cancel.
  return leading_factor(r, z) * std::exp(2.0 * kPi * kI * tau / 12.0) * theta_product(q, qz, terms);
}

Matrix2 lift_to_sl2z(const Matrix2& target, std::int64_t modulus) {
  const std::int64_t n = modulus;
  const std::int64_t a0 = mod(target.a, n), b0 = mod(target.b, n), c0 = mod(target.c, n), d0 = mod(target.d, n);
  ensure(mod(a0 * d0 - b0 * c0, n) == 1 % n, "lift target does not have determinant 1 mod " + std::to_string(n));

  std::int64_t c = c0 == 0 ? n : (c0 <= n - c0 ? c0 : c0 - n);
  // d = d0 + t n coprime to c; t in 0, -1, 1, -2, ...
  std::int64_t d = 0;
  bool found = false;
  for (std::int64_t s = 0; s < 4 * n + 8 && !found; ++s) {
    const std::int64_t t = (s % 2 == 0) ? s / 2 : -(s + 1) / 2;
    const std::int64_t cand = (d0 <= n - d0 ? d0 : d0 - n) + t * n;
    if (std::gcd(c, cand) == 1) {
      d = cand;
      found = true;
    }
  }
  ensure(found, "no d coprime to c in the lift search");

  // a* d - b* c = 1 from the extended Euclidean algorithm.
  std::int64_t old_r = d, r = c, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t qt = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - qt * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - qt * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - qt * t);
  }
  // old_s d + old_t c = old_r = +-1
  std::int64_t as = old_s * old_r, bs = -old_t * old_r;

  for (std::int64_t u = 0; u < n; ++u) {
    const std::int64_t a = as + u * c, b = bs + u * d;
    if (mod(a, n) == a0 && mod(b, n) == b0) {
      Matrix2 g{a, b, c, d};
      ensure(g.det() == 1, "lift does not have determinant 1");
      return g;
    }
  }
  throw InvariantViolation("no SL_2(Z) lift of " + target.to_string() + " mod " + std::to_string(n));
}

Matrix2 cartan_matrix(const CartanContext& ctx, CartanElement s) {
  return {ctx.reduce(s.a1), ctx.reduce(s.a2), ctx.reduce(ctx.epsilon() * s.a2), ctx.reduce(s.a1)};
}

Matrix2 cartan_coset_matrix(const CartanContext& ctx, CartanElement s) {
  return {ctx.reduce(s.a1), ctx.reduce(-s.a2), ctx.reduce(ctx.epsilon() * s.a2), ctx.reduce(-s.a1)};
}

Complex balanced_tau(const Matrix2& g) {
  if (g.c == 0) return {0.0, 1.0};
  const double c = static_cast<double>(g.c);
  return {-static_cast<double>(g.d) / c, 1.0 / std::fabs(c)};
}

ThWeightCheck check_Th_weight(const CartanContext& ctx, std::int64_t i, const Matrix2& gamma, Complex tau, double tol) {
  if (ctx.k() != 1) throw InputError("check_Th_weight supports k = 1 only");
  if (gamma.det() != 1) throw InputError("gamma must lie in SL_2(Z)");
  const std::int64_t p = ctx.p();
  const std::int64_t eps = ctx.reduce(ctx.epsilon());
  const std::int64_t al = mod(gamma.a, p), be = mod(gamma.b, p), ga = mod(gamma.c, p), de = mod(gamma.d, p);

  ThWeightCheck out;
  if (de == al && ga == mod(eps * be, p)) {
    out.expected_sign = 1;
  } else if (de == mod(-al, p) && ga == mod(-eps * be, p)) {
    out.expected_sign = p % 4 == 3 ? 1 : -1;
  } else {
    throw InputError("gamma " + gamma.to_string() + " is not in the normalizer of the Cartan group mod p");
  }

  const NormBuckets buckets = norm_class_partition(ctx);
  if (i < 0 || i >= static_cast<std::int64_t>(buckets.size())) throw InputError("H index out of range");
  const Complex gtau = gamma.act(tau);
  const int terms = std::max({200, required_terms(1.0, tau, 1e-16), required_terms(1.0, gtau, 1e-16)});

  Complex num = 1.0, den = 1.0;
  const double m = static_cast<double>(ctx.modulus());
  for (const CartanClass& c : buckets[static_cast<std::size_t>(i)]) {
    const KleinIndex a{static_cast<double>(c.a1) / m, static_cast<double>(c.a2) / m};
    num *= klein_eval(a, gtau, terms);
    den *= klein_eval(a, tau, terms);
  }
  out.ratio = num * std::pow(gamma.automorphy(tau), static_cast<int>(p + 1)) / den;
  out.sign = out.ratio.real() >= 0 ? 1 : -1;
  out.real = std::abs(out.ratio - static_cast<double>(out.sign)) <= tol;
  out.passed = out.real && out.sign == out.expected_sign;
  return out;
}

SlopeFit order_at_infinity_fit(double a1, const std::vector<double>& heights, double rel_tol) {
  if (heights.size() < 2) throw InputError("slope fit needs at least two heights");
  SlopeFit fit;
  fit.a1 = a1;
  fit.expected = bernoulli2_d(frac(a1)) / 2.0;
  const double k = static_cast<double>(heights.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double y : heights) {
    const double x = -2.0 * kPi * y;
    const double v = std::log(std::abs(siegel_eval({a1, 0.0}, {0.0, y})));
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
  }
  fit.fitted = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  fit.passed = std::fabs(fit.fitted - fit.expected) <= rel_tol * std::fabs(fit.expected);
  return fit;
}

std::vector<AnalyticCheck> klein_grid_checks(double tol) {
  const std::vector<Complex> taus{{0.0, 1.0}, {0.3, 1.0}, {0.0, 2.0}};
  const std::vector<Matrix2> gammas{{1, 1, 0, 1}, {0, -1, 1, 0}};
  const std::vector<KleinIndex> shifts{{1, 0}, {0, 1}, {1, -2}, {-1, 1}};
  double err_neg = 0, err_shift = 0, err_modular = 0, err_terms = 0;

  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (i == 0 && j == 0) continue;
      const KleinIndex a{i / 5.0, j / 5.0};
      for (const Complex tau : taus) {
        const Complex ka = klein_eval(a, tau, 400);
        const double mag = std::abs(ka);
        err_neg = std::max(err_neg, std::abs(klein_eval({-a.a1, -a.a2}, tau, 400) + ka) / mag);
        err_terms = std::max(err_terms, std::abs(klein_eval(a, tau, 800) - ka) / mag);
        for (const KleinIndex b : shifts) {
          const double m2 = std::abs(klein_eval({a.a1 + b.a1, a.a2 + b.a2}, tau, 400));
          err_shift = std::max(err_shift, std::fabs(m2 - mag) / mag);
        }
        for (const Matrix2& g : gammas) {
          const Complex lhs = klein_eval(a, g.act(tau), 400) * g.automorphy(tau);
          const double rhs = std::abs(klein_eval(a * g, tau, 400));
          err_modular = std::max(err_modular, std::fabs(std::abs(lhs) - rhs) / rhs);
        }
      }
    }
  }
  return {
      {"klein k_{-a} = -k_a", err_neg <= tol, "max rel err " + fmt(err_neg)},
      {"klein |k_{a+b}| = |k_a|", err_shift <= tol, "max rel err " + fmt(err_shift)},
      {"klein |k_a(g tau)(c tau + d)| = |k_{a g}(tau)|", err_modular <= tol, "max rel err " + fmt(err_modular)},
      {"klein truncation 400 vs 800 terms", err_terms <= 1e-10, "max rel change " + fmt(err_terms)},
  };
}

std::vector<AnalyticCheck> slope_checks() {
  std::vector<AnalyticCheck> out;
  for (int den : {5, 7}) {
    double worst = 0;
    bool ok = true;
    for (int num = 1; num < den; ++num) {
      const SlopeFit f = order_at_infinity_fit(static_cast<double>(num) / den);
      worst = std::max(worst, std::fabs(f.fitted - f.expected) / std::fabs(f.expected));
      ok = ok && f.passed;
    }
    out.push_back({"ord_inf g_(a1,0) = B_2(<a1>)/2, a1 in (1/" + std::to_string(den) + ")Z", ok,
                   "max rel err " + fmt(worst)});
  }
  return out;
}

std::vector<AnalyticCheck> sign_checks(std::int64_t p) {
  const CartanContext ctx = CartanContext::create(p, 1);
  auto first_with_norm = [&](std::int64_t target) {
    for (std::int64_t a = 0; a < p; ++a) {
      for (std::int64_t b = 1; b < p; ++b) {
        if (norm(ctx, {a, b}) == mod(target, p)) return CartanElement{a, b};
      }
    }
    throw InvariantViolation("no element of the requested norm");
  };

  std::vector<AnalyticCheck> out;
  const std::vector<std::pair<std::string, Matrix2>> cases{
      {"Cartan", lift_to_sl2z(cartan_matrix(ctx, first_with_norm(1)), p)},
      {"coset", lift_to_sl2z(cartan_coset_matrix(ctx, first_with_norm(-1)), p)},
  };
  for (const auto& [label, g] : cases) {
    bool ok = true;
    std::ostringstream detail;
    detail << "gamma = " << g.to_string() << ", signs";
    int expected = 0;
    for (std::int64_t i = 0; i < ctx.group_order(); ++i) {
      const ThWeightCheck r = check_Th_weight(ctx, i, g, balanced_tau(g));
      ok = ok && r.passed;
      expected = r.expected_sign;
      detail << ' ' << (r.real ? (r.sign > 0 ? "+1" : "-1") : "non-real");
    }
    out.push_back({"T+_h sign p=" + std::to_string(p) + " " + label + " (expected " + (expected > 0 ? "+1" : "-1") + ")",
                   ok, detail.str()});
  }
  return out;
}

}  // namespace ncartan
