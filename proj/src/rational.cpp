#include "pcr3bp/rational.hpp"

#include <mpfr.h>

#include <mutex>
#include <vector>

namespace pcr3bp {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s, 10));
    return Rational(BigInt(s.substr(0, slash), 10), BigInt(s.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw ArithmeticError("malformed rational literal '" + s + "'");
  }
}

long double Rational::to_long_double() const {
  mpfr_t x;
  mpfr_init2(x, 80);
  mpfr_set_q(x, q_.get_mpq_t(), MPFR_RNDN);
  long double v = mpfr_get_ld(x, MPFR_RNDN);
  mpfr_clear(x);
  return v;
}

Rational operator/(const Rational& x, const Rational& y) {
  if (y.is_zero()) throw ArithmeticError("division by zero");
  return Rational(mpq_class(x.q_ / y.q_));
}

Rational& Rational::operator/=(const Rational& y) {
  if (y.is_zero()) throw ArithmeticError("division by zero");
  q_ /= y.q_;
  return *this;
}

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base.is_zero()) throw ArithmeticError("zero to a negative power");
    return Rational(1) / pow(base, -exponent);
  }
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

BigInt factorial(unsigned n) {
  static std::mutex mu;
  static std::vector<BigInt> table{BigInt(1)};
  std::lock_guard lock(mu);
  while (table.size() <= n) table.push_back(table.back() * static_cast<unsigned long>(table.size()));
  return table[n];
}

}  // namespace pcr3bp
