#include "pcr3bp/hansen.hpp"

#include "pcr3bp/special_series.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace pcr3bp {

HansenMethod parse_method(const std::string& name) {
  if (name == "auto") return HansenMethod::Auto;
  if (name == "k0") return HansenMethod::K0;
  if (name == "newcomb") return HansenMethod::Newcomb;
  if (name == "wnuk") return HansenMethod::Wnuk;
  if (name == "balmino") return HansenMethod::Balmino;
  throw MethodError("unknown Hansen method '" + name + "'");
}

std::string method_name(HansenMethod method) {
  switch (method) {
    case HansenMethod::Auto: return "auto";
    case HansenMethod::K0: return "k0";
    case HansenMethod::Newcomb: return "newcomb";
    case HansenMethod::Wnuk: return "wnuk";
    case HansenMethod::Balmino: return "balmino";
  }
  return "?";
}

// ------------------------------------------------------------- k = 0

SeriesE hansen_k0_closed(int n, int m, int order) {
  if (n < 0) throw MethodError("closed form X_0^{n,m} needs n >= 0");
  m = std::abs(m);
  SeriesE s(order);
  // (-e/2)^m binom(n+m+1, m) F((m-n-1)/2, (m-n)/2; m+1; e^2)
  Rational lead = Rational(binomial_general(n + m + 1, m)) * pow(Rational(-1, 2), m);
  const Rational a = Rational(m - n - 1) / Rational(2);
  const Rational b = Rational(m - n) / Rational(2);
  const Rational c = Rational(m + 1);
  Rational term = lead;
  for (int i = 0; m + 2 * i <= order; ++i) {
    if (term.is_zero()) break;
    s.add_term(m + 2 * i, term);
    term *= (a + Rational(i)) * (b + Rational(i)) / ((c + Rational(i)) * Rational(i + 1));
  }
  return s;
}

RecursionResult hansen_k0_recursive(int n, int m, int order) {
  if (n < 0 || m < 0) throw MethodError("recursive X_0^{n,m} needs n >= 0 and m >= 0");
  // Each step of the m-recursion divides by e and so costs one order.
  const int work = order + std::max(0, m - 1);
  const SeriesE one_minus_e2 = eta_power(2, work);

  auto ascend_n = [&](int mm) {
    SeriesE prev = hansen_k0_closed(0, mm, work);
    SeriesE cur = hansen_k0_closed(1, mm, work);
    if (n == 0) return prev;
    for (int j = 1; j < n; ++j) {
      Rational c1 = Rational(2 * j + 3) / Rational(j + 2);
      Rational c2 = Rational((j + 1 - mm) * (j + 1 + mm)) / Rational((j + 1) * (j + 2));
      SeriesE next = c1 * cur - c2 * (one_minus_e2 * prev);
      prev = std::move(cur);
      cur = std::move(next);
    }
    return cur;
  };

  if (m <= 1) return {ascend_n(m).truncated(order), false};

  SeriesE lower = ascend_n(0);
  SeriesE upper = ascend_n(1);
  for (int mm = 1; mm < m; ++mm) {
    if (n - mm + 1 == 0) return {hansen_k0_closed(n, m, order), true};
    // e X^{n,mm+1} = (e (n+mm+1) X^{n,mm-1} + 2 mm X^{n,mm}) / (n - mm + 1)
    SeriesE rhs = Rational(n + mm + 1) * lower.shifted(1) + Rational(2 * mm) * upper;
    SeriesE next = (Rational(1) / Rational(n - mm + 1)) * rhs.shifted(-1);
    lower = std::move(upper);
    upper = std::move(next);
  }
  return {upper.truncated(order), false};
}

SeriesE hansen_k0_negative(int n, int m, int order) {
  if (n < 0 || m < 0) throw MethodError("X_0^{-(n+1),m} needs n >= 0 and m >= 0");
  if (n == 0) {
    // (a/r) dl = du, so the coefficient is the mean of a Blaschke factor.
    SeriesE b = beta_series(order);
    return (m % 2 ? Rational(-1) : Rational(1)) * pow(b, m);
  }
  SeriesE poly(order);
  for (int j = 0; 2 * j <= n - m - 1; ++j) {
    Rational c = Rational(BigInt(binomial_general(n - 1, 2 * j + m) * binomial_general(2 * j + m, j)));
    c /= pow(Rational(4), j);
    poly.add_term(2 * j, c);
  }
  SeriesE lead = SeriesE::monomial(pow(Rational(1, 2), m), m, order);
  return lead * (eta_power(-(2 * n - 1), order) * poly);
}

// ----------------------------------------------------------- Newcomb

Rational NewcombTable::value(int n, int m, int rho, int sigma) {
  if (rho < 0 || sigma < 0) return 0;
  if (rho == 0 && sigma == 0) return 1;
  const auto key = std::make_tuple(n, m, rho, sigma);
  if (auto it = values_.find(key); it != values_.end()) return it->second;

  Rational v;
  if (sigma == 0) {
    v = Rational(2 * (2 * m - n)) * value(n, m + 1, rho - 1, 0) + Rational(m - n) * value(n, m + 2, rho - 2, 0);
    v /= Rational(4 * rho);
  } else {
    v = Rational(-2 * (2 * m + n)) * value(n, m - 1, rho, sigma - 1) -
        Rational(m + n) * value(n, m - 2, rho, sigma - 2) -
        Rational(rho - 5 * sigma + 4 + 4 * m + n) * value(n, m, rho - 1, sigma - 1);
    Rational tail;
    const Rational three_halves(3, 2);
    for (int j = 2; j <= std::min(rho, sigma); ++j) {
      Rational c = binomial_rational(three_halves, j);
      if (j % 2) c = -c;
      tail += c * value(n, m, rho - j, sigma - j);
    }
    v += Rational(2 * (rho - sigma + m)) * tail;
    v /= Rational(4 * sigma);
  }
  values_.emplace(key, v);
  return v;
}

SeriesE hansen_newcomb(const HansenKey& key, int order) {
  static std::mutex mu;
  static NewcombTable table;
  const int d = key.k - key.m;
  SeriesE s(order);
  std::lock_guard lock(mu);
  for (int sigma = std::max(0, -d); d + 2 * sigma <= order; ++sigma)
    s.add_term(d + 2 * sigma, table.value(key.n, key.m, sigma + d, sigma));
  return s;
}

// -------------------------------------------------------------- Wnuk

namespace {

// Integer tables for one truncation order N:
//   beta_int[j][q] = 2^q [e^q] beta^j   (integral: beta has dyadic coefficients)
struct WnukBasis {
  int order;
  std::vector<std::vector<BigInt>> beta_int;
  BigInt order_factorial;

  explicit WnukBasis(int N) : order(N), beta_int(static_cast<std::size_t>(N + 1)), order_factorial(factorial(static_cast<unsigned>(N))) {
    const SeriesE beta = beta_series(N);
    SeriesE power = SeriesE::constant(1, N);
    for (int j = 0; j <= N; ++j) {
      auto& row = beta_int[j];
      row.assign(static_cast<std::size_t>(N + 1), BigInt(0));
      for (const auto& [q, c] : power.terms()) {
        Rational scaled = c * pow(Rational(2), q);
        if (!scaled.is_integer()) throw ArithmeticError("beta power is not dyadic");
        row[q] = scaled.numerator();
      }
      power = power * beta;
    }
  }
};

std::shared_ptr<const WnukBasis> wnuk_basis(int order) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const WnukBasis>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(order); it != cache.end()) return it->second;
  }
  auto basis = std::make_shared<const WnukBasis>(order);
  std::lock_guard lock(mu);
  return cache.emplace(order, std::move(basis)).first->second;
}

// (1 + beta^2)^{-p} = ((1 + eta) / 2)^p
SeriesE wnuk_prefactor(int p, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, SeriesE> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({p, order}); it != cache.end()) return it->second;
  }
  SeriesE half_one_plus_eta = Rational(1, 2) * (SeriesE::constant(1, order) + eta_power(1, order));
  SeriesE v = pow(half_one_plus_eta, p);
  std::lock_guard lock(mu);
  return cache.emplace(std::make_pair(p, order), std::move(v)).first->second;
}

}  // namespace

SeriesE hansen_wnuk(const HansenKey& key, int order) {
  const int N = order;
  const auto basis = wnuk_basis(N);
  const int n = key.n, m = key.m, k = key.k;
  const long A = n + 1 - m;
  const long B = n + 1 + m;

  std::vector<BigInt> kpow(static_cast<std::size_t>(N + 1));
  kpow[0] = 1;
  for (int q = 1; q <= N; ++q) kpow[q] = kpow[q - 1] * std::abs(k);

  std::vector<BigInt> total(static_cast<std::size_t>(N + 1));
  std::vector<BigInt> e_int(static_cast<std::size_t>(N + 1));
  std::vector<BigInt> j_int(static_cast<std::size_t>(N + 1));
  std::vector<BigInt> coef;

  for (int t = -N; t <= N; ++t) {
    const int d = k - t - m;
    const int ad = std::abs(d), at = std::abs(t);
    if (ad + at > N) continue;
    if (k == 0 && t != 0) continue;

    // E_{k-t}: (-beta)^{|d|} sum_s binom(X, |d|+s) binom(Y, s) beta^{2s}
    const long X = d >= 0 ? A : B;
    const long Y = d >= 0 ? B : A;
    const int e_hi = N - at;
    coef.clear();
    for (int s = 0; ad + 2 * s <= e_hi; ++s) {
      BigInt c = binomial_general(X, ad + s) * binomial_general(Y, s);
      if (ad % 2) c = -c;
      coef.push_back(std::move(c));
    }
    for (int q = ad; q <= e_hi; q += 2) {
      BigInt& acc = e_int[q];
      acc = 0;
      for (int s = 0; ad + 2 * s <= q; ++s) {
        if (coef[s] == 0) continue;
        mpz_addmul(acc.get_mpz_t(), coef[s].get_mpz_t(), basis->beta_int[ad + 2 * s][q].get_mpz_t());
      }
    }

    // J_t(k e) scaled by 2^q N!
    const int j_hi = N - ad;
    const bool flip = (t < 0 && at % 2 == 1) != (k < 0 && at % 2 == 1);
    for (int s = 0; at + 2 * s <= j_hi; ++s) {
      const int q = at + 2 * s;
      BigInt v;
      if (k == 0) {
        v = s == 0 ? basis->order_factorial : BigInt(0);
      } else {
        BigInt den = factorial(static_cast<unsigned>(s)) * factorial(static_cast<unsigned>(at + s));
        mpz_divexact(v.get_mpz_t(), basis->order_factorial.get_mpz_t(), den.get_mpz_t());
        v *= kpow[q];
      }
      if ((s % 2 == 1) != flip) v = -v;
      j_int[q] = std::move(v);
    }

    for (int q1 = ad; q1 <= e_hi; q1 += 2) {
      if (e_int[q1] == 0) continue;
      for (int q2 = at; q1 + q2 <= N; q2 += 2)
        mpz_addmul(total[q1 + q2].get_mpz_t(), e_int[q1].get_mpz_t(), j_int[q2].get_mpz_t());
    }
  }

  SeriesE sum(N);
  for (int q = 0; q <= N; ++q) {
    if (total[q] == 0) continue;
    BigInt den = basis->order_factorial;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(q));
    sum.add_term(q, Rational(total[q], den));
  }
  return wnuk_prefactor(n + 1, N) * sum;
}

// ----------------------------------------------------------- Balmino

SeriesE hansen_balmino(int n, int m, int k, int order) {
  const int s = k - m;
  if (s < 0) throw MethodError("Balmino expansion needs s = k - m >= 0");
  std::vector<Rational> kpow_over_fact(static_cast<std::size_t>(order + s + 2));
  for (int p = 0; p < static_cast<int>(kpow_over_fact.size()); ++p)
    kpow_over_fact[p] = pow(Rational(k), p) / Rational(factorial(static_cast<unsigned>(p)));

  SeriesE out(order);
  const Rational lead = pow(Rational(-1, 2), s);
  for (int t = 0; s + 2 * t <= order; ++t) {
    Rational braces;
    for (int j = 0; j <= t; ++j) {
      for (int p = 0; p <= j; ++p) {
        Rational outer = Rational(binomial_general(n + m + 1, j - p)) * kpow_over_fact[p];
        if (outer.is_zero()) continue;
        for (int q = 0; q <= s + j; ++q) {
          BigInt b1 = binomial_general(n - m + 1, s + j - q);
          if (b1 == 0) continue;
          const long top = 2L * t - n + s - p - q;
          BigInt bracket = 2 * binomial_general(top - 2, t - j) - binomial_general(top - 1, t - j);
          if (bracket == 0) continue;
          Rational inner = Rational(BigInt(b1 * bracket)) * kpow_over_fact[q];
          if (q % 2) inner = -inner;
          braces += outer * inner;
        }
      }
    }
    out.add_term(s + 2 * t, lead * braces / pow(Rational(4), t));
  }
  return out;
}

// -------------------------------------------------------- dispatcher

namespace {

SeriesE compute_auto(const HansenKey& c, int order) {
  if (c.k == 0) {
    if (c.n >= 0) return hansen_k0_closed(c.n, c.m, order);
    return hansen_k0_negative(-c.n - 1, std::abs(c.m), order);
  }
  return hansen_wnuk(c, order);
}

}  // namespace

SeriesE HansenCache::get(const HansenKey& key, int order) {
  const HansenKey c = key.canonical();
  {
    std::shared_lock lock(mu_);
    if (auto it = store_.find(c); it != store_.end() && it->second.order() >= order)
      return it->second.truncated(order);
  }
  SeriesE value = compute_auto(c, order);
  std::unique_lock lock(mu_);
  auto [it, inserted] = store_.emplace(c, value);
  if (!inserted && it->second.order() < order) it->second = value;
  return value;
}

std::size_t HansenCache::size() const {
  std::shared_lock lock(mu_);
  return store_.size();
}

void HansenCache::clear() {
  std::unique_lock lock(mu_);
  store_.clear();
}

HansenCache& global_hansen_cache() {
  static HansenCache cache;
  return cache;
}

SeriesE hansen(const HansenKey& key, int order, HansenMethod method) {
  if (order < 0) throw MethodError("negative truncation order");
  const HansenKey c = key.canonical();
  switch (method) {
    case HansenMethod::Auto:
      return global_hansen_cache().get(c, order);
    case HansenMethod::K0:
      if (c.k != 0) throw MethodError("method k0 needs k = 0");
      if (c.n >= 0) return hansen_k0_closed(c.n, c.m, order);
      return hansen_k0_negative(-c.n - 1, std::abs(c.m), order);
    case HansenMethod::Newcomb:
      return hansen_newcomb(c, order);
    case HansenMethod::Wnuk:
      return hansen_wnuk(c, order);
    case HansenMethod::Balmino:
      if (c.k - c.m >= 0) return hansen_balmino(c.n, c.m, c.k, order);
      return hansen_balmino(c.n, -c.m, -c.k, order);
  }
  throw MethodError("unsupported method");
}

std::string hansen_table(int n_lo, int n_hi, int m_lo, int m_hi, int k, int order, TableFormat format,
                         HansenMethod method) {
  if (n_lo > n_hi || m_lo > m_hi) throw MethodError("empty table range");
  std::ostringstream os;
  const char* sep = format == TableFormat::Csv ? "," : " | ";
  auto quote = [&](const std::string& cell) {
    return format == TableFormat::Csv ? "\"" + cell + "\"" : cell;
  };
  os << "n";
  for (int m = m_lo; m <= m_hi; ++m) os << sep << quote("X_" + std::to_string(k) + "^{n," + std::to_string(m) + "}");
  os << '\n';
  for (int n = n_lo; n <= n_hi; ++n) {
    os << n;
    for (int m = m_lo; m <= m_hi; ++m) os << sep << quote(hansen({n, m, k}, order, method).pretty());
    os << '\n';
  }
  return os.str();
}

}  // namespace pcr3bp
