#pragma once

// Truncated power series with exact rational coefficients.
//
// SeriesE is a series in the eccentricity e, SeriesAE a series in the
// semi-major axis a and e.  Both store only non-zero coefficients and carry
// per-variable truncation bounds; every term above a bound is discarded.

#include "pcr3bp/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pcr3bp {

class SeriesE {
 public:
  using Terms = std::map<int, Rational>;

  explicit SeriesE(int order = 0);
  SeriesE(int order, Terms terms);

  static SeriesE constant(const Rational& c, int order) { return monomial(c, 0, order); }
  static SeriesE monomial(const Rational& c, int power, int order);

  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  Rational coeff(int q) const;
  bool is_zero() const { return terms_.empty(); }
  /// Lowest exponent with a non-zero coefficient.
  std::optional<int> lowest_power() const;

  /// Adds c*e^q in place; q above the order is ignored.
  void add_term(int q, const Rational& c);

  SeriesE truncated(int order) const;
  /// Multiplies by e^p (p may be negative only when the division is exact).
  SeriesE shifted(int p) const;

  template <class T>
  T evaluate(T e) const {
    T acc = 0;
    int next = order_;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      for (; next > it->first; --next) acc *= e;
      acc += static_cast<T>(it->second.to_long_double());
    }
    for (; next > 0; --next) acc *= e;
    return acc;
  }

  SeriesE operator-() const;
  friend SeriesE operator+(const SeriesE& x, const SeriesE& y);
  friend SeriesE operator-(const SeriesE& x, const SeriesE& y);
  friend SeriesE operator*(const SeriesE& x, const SeriesE& y);
  friend SeriesE operator*(const Rational& c, const SeriesE& x);
  friend bool operator==(const SeriesE& x, const SeriesE& y) {
    return x.order_ == y.order_ && x.terms_ == y.terms_;
  }

  /// `num/den * e^q` terms joined by " + ", followed by "O(e^{order+1})".
  std::string to_text() const;
  static SeriesE parse(std::string_view text);
  /// Human-oriented form, e.g. "1 + 3/2 e^2".
  std::string pretty() const;

 private:
  int order_;
  Terms terms_;
};

/// Multiplicative inverse; the constant term must be non-zero.
SeriesE inverse(const SeriesE& s);
/// Long division num/den; den must have a non-zero constant term.
SeriesE divide(const SeriesE& num, const SeriesE& den);
/// Integer power (negative exponents go through inverse()).
SeriesE pow(const SeriesE& s, int exponent);

class SeriesAE {
 public:
  using Key = std::pair<int, int>;  // (power of a, power of e)
  using Terms = std::map<Key, Rational>;

  SeriesAE(int order_a = 0, int order_e = 0);
  SeriesAE(int order_a, int order_e, Terms terms);

  int order_a() const { return order_a_; }
  int order_e() const { return order_e_; }
  const Terms& terms() const { return terms_; }
  Rational coeff(int n, int q) const;
  bool is_zero() const { return terms_.empty(); }

  void add_term(int n, int q, const Rational& c);
  /// Adds c * a^n * s(e).
  void add_scaled(int n, const Rational& c, const SeriesE& s);

  SeriesAE truncated(int order_a, int order_e) const;
  SeriesAE derivative_a() const;
  SeriesAE derivative_e() const;

  /// Double-precision Horner evaluation in a, then e.
  template <class T>
  T evaluate(T a, T e) const {
    T acc = 0;
    int next = order_a_;
    auto it = terms_.rbegin();
    while (it != terms_.rend()) {
      int n = it->first.first;
      T row = 0;
      int qnext = order_e_;
      for (; it != terms_.rend() && it->first.first == n; ++it) {
        for (; qnext > it->first.second; --qnext) row *= e;
        row += static_cast<T>(it->second.to_long_double());
      }
      for (; qnext > 0; --qnext) row *= e;
      for (; next > n; --next) acc *= a;
      acc += row;
    }
    for (; next > 0; --next) acc *= a;
    return acc;
  }

  SeriesAE operator-() const;
  friend SeriesAE operator+(const SeriesAE& x, const SeriesAE& y);
  friend SeriesAE operator-(const SeriesAE& x, const SeriesAE& y);
  friend SeriesAE operator*(const SeriesAE& x, const SeriesAE& y);
  friend SeriesAE operator*(const Rational& c, const SeriesAE& x);
  friend bool operator==(const SeriesAE& x, const SeriesAE& y) {
    return x.order_a_ == y.order_a_ && x.order_e_ == y.order_e_ && x.terms_ == y.terms_;
  }

  /// Canonical text: terms sorted by (n, q), each `num/den * a^n * e^q`,
  /// joined by " + ", then "O(a^{Na+1}, e^{Ne+1})".
  std::string to_text() const;
  static SeriesAE parse(std::string_view text);

 private:
  int order_a_;
  int order_e_;
  Terms terms_;
};

namespace detail {

/// Exact convolution of dense coefficient vectors using a common
/// denominator per operand; keeps only indices <= max_index.  Indices are
/// the vector positions.
std::vector<Rational> convolve(const std::vector<Rational>& x, const std::vector<Rational>& y,
                               int max_index);

/// Integer numerators of `values` over their least common denominator.
std::pair<std::vector<BigInt>, BigInt> common_denominator(const std::vector<Rational>& values);

}  // namespace detail

}  // namespace pcr3bp
