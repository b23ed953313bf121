#pragma once

// Exact rational numbers backed by GMP.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pcr3bp {

/// Raised for arithmetic that has no exact result (division by zero,
/// non-integer where an integer is required, malformed literals).
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using BigInt = mpz_class;

/// Arbitrary-precision signed rational, always in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(static_cast<long>(v)) {}  // NOLINT
  explicit Rational(const BigInt& num) : q_(num) {}
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "p" or "p/q" (optional sign on p).
  static Rational parse(std::string_view text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  double to_double() const { return q_.get_d(); }
  long double to_long_double() const;
  std::string str() const { return q_.get_str(); }
  /// Always "num/den", also for integers.
  std::string fraction() const { return numerator().get_str() + "/" + denominator().get_str(); }

  friend Rational operator+(const Rational& x, const Rational& y) { return Rational(raw_sum(x, y)); }
  friend Rational operator-(const Rational& x, const Rational& y) { return Rational(raw_diff(x, y)); }
  friend Rational operator*(const Rational& x, const Rational& y) { return Rational(raw_prod(x, y)); }
  friend Rational operator/(const Rational& x, const Rational& y);
  Rational operator-() const { return Rational(mpq_class(-q_)); }

  Rational& operator+=(const Rational& y) { q_ += y.q_; return *this; }
  Rational& operator-=(const Rational& y) { q_ -= y.q_; return *this; }
  Rational& operator*=(const Rational& y) { q_ *= y.q_; return *this; }
  Rational& operator/=(const Rational& y);

  friend bool operator==(const Rational& x, const Rational& y) { return x.q_ == y.q_; }
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    int c = cmp(x.q_, y.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

 private:
  static mpq_class raw_sum(const Rational& x, const Rational& y) { return x.q_ + y.q_; }
  static mpq_class raw_diff(const Rational& x, const Rational& y) { return x.q_ - y.q_; }
  static mpq_class raw_prod(const Rational& x, const Rational& y) { return x.q_ * y.q_; }

  mpq_class q_;
};

Rational pow(const Rational& base, int exponent);
Rational abs(const Rational& x);

BigInt factorial(unsigned n);

}  // namespace pcr3bp
