#include "pcr3bp/special_series.hpp"

#include <cstdlib>

namespace pcr3bp {

BigInt binomial_general(long top, long p) {
  if (p < 0) return 0;
  BigInt out;
  if (top >= 0) {
    if (p > top) return 0;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(p));
    return out;
  }
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(-top + p - 1), static_cast<unsigned long>(p));
  if (p % 2) out = -out;
  return out;
}

Rational binomial_rational(const Rational& x, long p) {
  if (p < 0) return 0;
  Rational acc = 1;
  for (long i = 0; i < p; ++i) acc *= x - Rational(i);
  return acc / Rational(factorial(static_cast<unsigned>(p)));
}

SeriesE eta_power(int p, int order) {
  SeriesE s(order);
  const Rational half_p = Rational(p) / Rational(2);
  for (int i = 0; 2 * i <= order; ++i) {
    Rational c = binomial_rational(half_p, i);
    if (i % 2) c = -c;
    s.add_term(2 * i, c);
  }
  return s;
}

SeriesE beta_series(int order) {
  // Division by 1 + eta loses nothing: the numerator e already carries one
  // power, so compute e/(1+eta) at the full order directly.
  SeriesE one_plus_eta = SeriesE::constant(1, order) + eta_power(1, order);
  return divide(SeriesE::monomial(1, 1, order), one_plus_eta);
}

SeriesE bessel_J(int t, int k, int order) {
  const int at = std::abs(t);
  SeriesE s(order);
  if (k == 0) {
    if (t == 0) s.add_term(0, 1);
    return s;
  }
  const bool flip = t < 0 && (at % 2 == 1);
  for (int j = 0; at + 2 * j <= order; ++j) {
    const int q = at + 2 * j;
    BigInt num;
    mpz_pow_ui(num.get_mpz_t(), BigInt(k).get_mpz_t(), static_cast<unsigned long>(q));
    BigInt den = factorial(static_cast<unsigned>(j)) * factorial(static_cast<unsigned>(at + j));
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(q));
    if ((j % 2 == 1) != flip) num = -num;
    s.add_term(q, Rational(num, den));
  }
  return s;
}

}  // namespace pcr3bp
