#include "pcr3bp/fourier.hpp"

#include "pcr3bp/hansen.hpp"
#include "pcr3bp/special_series.hpp"

#include <json.hpp>

#include <cstdlib>
#include <numeric>
#include <sstream>

namespace pcr3bp {

Mode Mode::of(int m, int k) {
  Mode md;
  md.m = m;
  md.k = k;
  const bool positive = m > 0 || (m == 0 && k > 0);
  md.in_G2 = positive && std::gcd(m, k) == 1;
  md.m_star = (m == 0 || m == 1) ? m + 2 : std::abs(m);
  return md;
}

Rational legendre_weight(int n, int m) {
  m = std::abs(m);
  if (n < 0 || m > n || (n - m) % 2 != 0)
    throw DomainError("C_{n,m} needs n >= |m| and n = m mod 2");
  const unsigned p = static_cast<unsigned>((n + m) / 2), q = static_cast<unsigned>((n - m) / 2);
  BigInt num = factorial(static_cast<unsigned>(n + m)) * factorial(static_cast<unsigned>(n - m));
  BigInt den = factorial(p) * factorial(p) * factorial(q) * factorial(q);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(2 * n));
  return Rational(num, den);
}

SeriesAE fourier_coefficient(const Mode& mode, int order_a, int order_e) {
  if (mode.m < 0) throw DomainError("f_{m,k} is assembled for m >= 0 only");
  if (order_a < 0 || order_e < 0) throw DomainError("negative truncation order");
  SeriesAE f(order_a, order_e);
  const bool zero_mode = mode.m == 0 && mode.k == 0;
  if (zero_mode) f.add_term(0, 0, -1);
  const Rational factor = zero_mode ? Rational(-1) : Rational(-2);
  for (int n = mode.m_star; n <= order_a; n += 2)
    f.add_scaled(n, factor * legendre_weight(n, mode.m), hansen({n, mode.m, mode.k}, order_e));
  return f;
}

std::string case_label(TmkCase c) {
  switch (c) {
    case TmkCase::AMinus: return "A-";
    case TmkCase::APlus: return "A+";
    case TmkCase::AEqual: return "A=";
    case TmkCase::BMinus: return "B-";
    case TmkCase::BPlus: return "B+";
    case TmkCase::BEqual: return "B=";
  }
  return "?";
}

namespace {

Rational kpow_over_factorial(int k, int p) {
  return pow(Rational(k), p) / Rational(factorial(static_cast<unsigned>(p)));
}

Rational pow2(int p) { return pow(Rational(2), p); }

Rational fact(int p) { return Rational(factorial(static_cast<unsigned>(p))); }

}  // namespace

AsymptoticCoefficient t_mk(const Mode& mode) {
  const int m = mode.m, k = mode.k;
  if (m < 0) throw DomainError("t_{m,k} is defined for m >= 0 only");
  AsymptoticCoefficient out;
  out.mode = mode;
  out.leading_e_power = std::abs(m - k);
  out.leading_a_power = mode.m_star;
  const int sgn_km = (k - m) % 2 == 0 ? 1 : -1;

  if (m >= 2) {
    const Rational w = fact(2 * m) / (fact(m) * fact(m));
    if (k > m) {
      out.case_label = TmkCase::AMinus;
      out.t_value = -w / pow2(m + k) * Rational(m) * pow(Rational(k), k - m) / (Rational(k) * fact(k - m));
    } else if (k < m) {
      out.case_label = TmkCase::APlus;
      Rational sum;
      for (int p = 0; p <= m - k; ++p)
        sum = sum + Rational(binomial_general(2 * m + 1, m - k - p)) * kpow_over_factorial(k, p);
      out.t_value = Rational(-sgn_km) * w / pow2(3 * m - k) * sum;
    } else {
      out.case_label = TmkCase::AEqual;
      out.t_value = -w / pow2(2 * m);
    }
    return out;
  }

  const Rational w = fact(2 * m + 2) / (fact(m + 1) * fact(m + 1));
  if (k > m) {
    out.case_label = TmkCase::BMinus;
    // q below zero would need 1/q! for negative q; those terms vanish.
    Rational sum;
    for (int q = std::max(0, k - m - 3); q <= k - m; ++q) {
      Rational term = Rational(binomial_general(3, k - m - q)) * kpow_over_factorial(k, q);
      sum = q % 2 == 0 ? sum + term : sum - term;
    }
    out.t_value = Rational(-sgn_km) * w / pow2(m + k + 3) * sum;
  } else if (k < m) {
    out.case_label = TmkCase::BPlus;
    Rational sum;
    for (int p = 0; p <= m - k; ++p)
      sum = sum + Rational(binomial_general(2 * m + 3, m - k - p)) * kpow_over_factorial(k, p);
    out.t_value = Rational(-sgn_km) * w / pow2(3 * m - k + 3) * sum;
  } else {
    out.case_label = TmkCase::BEqual;
    out.t_value = -w / pow2(2 * m + 3);
  }
  return out;
}

ConsistencyReport asymptotic_consistency(const Mode& mode, int order_a, int order_e) {
  ConsistencyReport r;
  r.mode = mode;
  const AsymptoticCoefficient t = t_mk(mode);
  const SeriesAE f = fourier_coefficient(mode, order_a, order_e);
  r.series_value = f.coeff(t.leading_a_power, t.leading_e_power);
  const bool zero_mode = mode.m == 0 && mode.k == 0;
  r.expected = zero_mode ? t.t_value : Rational(2) * t.t_value;
  r.pass = visible(mode, order_a) && order_e >= t.leading_e_power && r.series_value == r.expected;
  return r;
}

std::string coefficient_matrix_csv(const SeriesAE& f) {
  std::ostringstream os;
  os << "n\\q";
  for (int q = 0; q <= f.order_e(); ++q) os << ',' << q;
  os << '\n';
  for (int n = 0; n <= f.order_a(); ++n) {
    os << n;
    for (int q = 0; q <= f.order_e(); ++q) os << ',' << f.coeff(n, q).fraction();
    os << '\n';
  }
  return os.str();
}

std::string coefficient_matrix_json(const Mode& mode, const SeriesAE& f) {
  nlohmann::ordered_json j;
  j["mode"] = {mode.m, mode.k};
  j["order"] = {f.order_a(), f.order_e()};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int n = 0; n <= f.order_a(); ++n) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int q = 0; q <= f.order_e(); ++q) row.push_back(f.coeff(n, q).fraction());
    rows.push_back(std::move(row));
  }
  j["coefficients"] = std::move(rows);
  return j.dump(1) + "\n";
}

}  // namespace pcr3bp
