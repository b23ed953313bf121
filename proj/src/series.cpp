#include "pcr3bp/series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pcr3bp {

namespace detail {

std::pair<std::vector<BigInt>, BigInt> common_denominator(const std::vector<Rational>& values) {
  BigInt lcm = 1;
  for (const auto& v : values) {
    if (v.is_zero()) continue;
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.raw().get_den_mpz_t());
  }
  std::vector<BigInt> nums(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].is_zero()) continue;
    BigInt scale;
    mpz_divexact(scale.get_mpz_t(), lcm.get_mpz_t(), values[i].raw().get_den_mpz_t());
    nums[i] = values[i].raw().get_num() * scale;
  }
  return {std::move(nums), std::move(lcm)};
}

std::vector<Rational> convolve(const std::vector<Rational>& x, const std::vector<Rational>& y,
                               int max_index) {
  const int nx = static_cast<int>(x.size());
  const int ny = static_cast<int>(y.size());
  const int len = std::max(0, std::min(max_index + 1, nx + ny - 1));
  std::vector<Rational> out(static_cast<std::size_t>(len));
  if (len == 0) return out;
  auto [xi, dx] = common_denominator(x);
  auto [yi, dy] = common_denominator(y);
  std::vector<int> xnz, ynz;
  for (int i = 0; i < nx; ++i)
    if (xi[i] != 0) xnz.push_back(i);
  for (int j = 0; j < ny; ++j)
    if (yi[j] != 0) ynz.push_back(j);
  std::vector<BigInt> acc(static_cast<std::size_t>(len));
  for (int i : xnz) {
    for (int j : ynz) {
      if (i + j >= len) break;
      mpz_addmul(acc[i + j].get_mpz_t(), xi[i].get_mpz_t(), yi[j].get_mpz_t());
    }
  }
  BigInt den = dx * dy;
  for (int q = 0; q < len; ++q)
    if (acc[q] != 0) out[q] = Rational(acc[q], den);
  return out;
}

}  // namespace detail

namespace {

std::vector<Rational> dense(const SeriesE& s) {
  std::vector<Rational> v(static_cast<std::size_t>(s.order() + 1));
  for (const auto& [q, c] : s.terms()) v[q] = c;
  return v;
}

SeriesE from_dense(const std::vector<Rational>& v, int order) {
  SeriesE::Terms t;
  for (int q = 0; q < static_cast<int>(v.size()) && q <= order; ++q)
    if (!v[q].is_zero()) t.emplace(q, v[q]);
  return SeriesE(order, std::move(t));
}

void expect(std::istream& in, char c) {
  in >> std::ws;
  if (in.get() != c) throw std::invalid_argument(std::string("series text: expected '") + c + "'");
}

int read_int(std::istream& in) {
  int v;
  if (!(in >> v)) throw std::invalid_argument("series text: expected integer");
  return v;
}

Rational read_rational(std::istream& in) {
  in >> std::ws;
  std::string tok;
  if (in.peek() == '-') tok.push_back(static_cast<char>(in.get()));
  while (in && (std::isdigit(in.peek()) || in.peek() == '/')) tok.push_back(static_cast<char>(in.get()));
  if (tok.empty()) throw std::invalid_argument("series text: expected coefficient");
  return Rational::parse(tok);
}

void expect_word(std::istream& in, std::string_view w) {
  in >> std::ws;
  for (char c : w)
    if (in.get() != c) throw std::invalid_argument("series text: expected '" + std::string(w) + "'");
}

}  // namespace

// ---------------------------------------------------------------- SeriesE

SeriesE::SeriesE(int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("negative truncation order");
}

SeriesE::SeriesE(int order, Terms terms) : SeriesE(order) {
  for (auto& [q, c] : terms) add_term(q, c);
}

SeriesE SeriesE::monomial(const Rational& c, int power, int order) {
  SeriesE s(order);
  s.add_term(power, c);
  return s;
}

Rational SeriesE::coeff(int q) const {
  auto it = terms_.find(q);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> SeriesE::lowest_power() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

void SeriesE::add_term(int q, const Rational& c) {
  if (q < 0) throw std::invalid_argument("negative exponent in SeriesE");
  if (q > order_ || c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(q, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SeriesE SeriesE::truncated(int order) const {
  SeriesE s(std::min(order, order_));
  for (const auto& [q, c] : terms_) {
    if (q > s.order_) break;
    s.terms_.emplace(q, c);
  }
  return s;
}

SeriesE SeriesE::shifted(int p) const {
  if (p >= 0) {
    SeriesE s(order_);
    for (const auto& [q, c] : terms_) s.add_term(q + p, c);
    return s;
  }
  // Dividing by e^|p| lowers the order by |p|.
  if (!terms_.empty() && terms_.begin()->first < -p)
    throw ArithmeticError("series is not divisible by the requested power of e");
  SeriesE s(std::max(0, order_ + p));
  for (const auto& [q, c] : terms_) s.add_term(q + p, c);
  return s;
}

SeriesE SeriesE::operator-() const {
  SeriesE s(order_);
  for (const auto& [q, c] : terms_) s.terms_.emplace(q, -c);
  return s;
}

SeriesE operator+(const SeriesE& x, const SeriesE& y) {
  SeriesE s = x.truncated(std::min(x.order_, y.order_));
  for (const auto& [q, c] : y.terms_) s.add_term(q, c);
  return s;
}

SeriesE operator-(const SeriesE& x, const SeriesE& y) { return x + (-y); }

SeriesE operator*(const SeriesE& x, const SeriesE& y) {
  const int order = std::min(x.order_, y.order_);
  return from_dense(detail::convolve(dense(x), dense(y), order), order);
}

SeriesE operator*(const Rational& c, const SeriesE& x) {
  SeriesE s(x.order_);
  if (c.is_zero()) return s;
  for (const auto& [q, v] : x.terms_) s.terms_.emplace(q, c * v);
  return s;
}

std::string SeriesE::to_text() const {
  std::ostringstream os;
  for (const auto& [q, c] : terms_)
    os << c.numerator() << '/' << c.denominator() << " * e^" << q << " + ";
  if (terms_.empty()) os << "0 + ";
  os << "O(e^" << order_ + 1 << ')';
  return os.str();
}

SeriesE SeriesE::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  SeriesE::Terms terms;
  for (;;) {
    in >> std::ws;
    if (in.peek() == 'O') {
      expect_word(in, "O(e^");
      int order = read_int(in) - 1;
      expect(in, ')');
      return SeriesE(order, std::move(terms));
    }
    Rational c = read_rational(in);
    in >> std::ws;
    if (in.peek() == '*') {
      expect(in, '*');
      expect_word(in, "e^");
      int q = read_int(in);
      terms[q] = c;
    } else if (!c.is_zero()) {
      throw std::invalid_argument("series text: bare non-zero constant");
    }
    expect(in, '+');
  }
}

std::string SeriesE::pretty() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [q, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (q == 0) {
      os << mag;
      continue;
    }
    if (mag != Rational(1)) os << mag << ' ';
    os << 'e';
    if (q != 1) os << '^' << q;
  }
  return os.str();
}

SeriesE inverse(const SeriesE& s) {
  const Rational c0 = s.coeff(0);
  if (c0.is_zero()) throw ArithmeticError("series inverse needs a non-zero constant term");
  const int order = s.order();
  std::vector<Rational> in = dense(s);
  std::vector<Rational> out(static_cast<std::size_t>(order + 1));
  const Rational inv0 = Rational(1) / c0;
  out[0] = inv0;
  for (int q = 1; q <= order; ++q) {
    Rational acc;
    for (int j = 1; j <= q; ++j)
      if (!in[j].is_zero() && !out[q - j].is_zero()) acc += in[j] * out[q - j];
    out[q] = -acc * inv0;
  }
  return from_dense(out, order);
}

SeriesE divide(const SeriesE& num, const SeriesE& den) {
  const Rational c0 = den.coeff(0);
  if (c0.is_zero()) throw ArithmeticError("series division needs a divisor with non-zero constant term");
  const int order = std::min(num.order(), den.order());
  std::vector<Rational> n = dense(num.truncated(order));
  std::vector<Rational> d = dense(den.truncated(order));
  std::vector<Rational> quo(static_cast<std::size_t>(order + 1));
  const Rational inv0 = Rational(1) / c0;
  for (int q = 0; q <= order; ++q) {
    Rational acc = n[q];
    for (int j = 1; j <= q; ++j)
      if (!d[j].is_zero() && !quo[q - j].is_zero()) acc -= d[j] * quo[q - j];
    quo[q] = acc * inv0;
  }
  return from_dense(quo, order);
}

SeriesE pow(const SeriesE& s, int exponent) {
  if (exponent < 0) return pow(inverse(s), -exponent);
  SeriesE result = SeriesE::constant(1, s.order());
  SeriesE base = s;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

// --------------------------------------------------------------- SeriesAE

SeriesAE::SeriesAE(int order_a, int order_e) : order_a_(order_a), order_e_(order_e) {
  if (order_a < 0 || order_e < 0) throw std::invalid_argument("negative truncation order");
}

SeriesAE::SeriesAE(int order_a, int order_e, Terms terms) : SeriesAE(order_a, order_e) {
  for (auto& [k, c] : terms) add_term(k.first, k.second, c);
}

Rational SeriesAE::coeff(int n, int q) const {
  auto it = terms_.find({n, q});
  return it == terms_.end() ? Rational(0) : it->second;
}

void SeriesAE::add_term(int n, int q, const Rational& c) {
  if (n < 0 || q < 0) throw std::invalid_argument("negative exponent in SeriesAE");
  if (n > order_a_ || q > order_e_ || c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(Key{n, q}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void SeriesAE::add_scaled(int n, const Rational& c, const SeriesE& s) {
  if (c.is_zero()) return;
  for (const auto& [q, v] : s.terms()) add_term(n, q, c * v);
}

SeriesAE SeriesAE::truncated(int order_a, int order_e) const {
  SeriesAE s(std::min(order_a, order_a_), std::min(order_e, order_e_));
  for (const auto& [k, c] : terms_)
    if (k.first <= s.order_a_ && k.second <= s.order_e_) s.terms_.emplace(k, c);
  return s;
}

SeriesAE SeriesAE::derivative_a() const {
  SeriesAE s(order_a_, order_e_);
  for (const auto& [k, c] : terms_)
    if (k.first > 0) s.add_term(k.first - 1, k.second, c * Rational(k.first));
  return s;
}

SeriesAE SeriesAE::derivative_e() const {
  SeriesAE s(order_a_, order_e_);
  for (const auto& [k, c] : terms_)
    if (k.second > 0) s.add_term(k.first, k.second - 1, c * Rational(k.second));
  return s;
}

SeriesAE SeriesAE::operator-() const {
  SeriesAE s(order_a_, order_e_);
  for (const auto& [k, c] : terms_) s.terms_.emplace(k, -c);
  return s;
}

SeriesAE operator+(const SeriesAE& x, const SeriesAE& y) {
  SeriesAE s = x.truncated(y.order_a_, y.order_e_);
  for (const auto& [k, c] : y.terms_) s.add_term(k.first, k.second, c);
  return s;
}

SeriesAE operator-(const SeriesAE& x, const SeriesAE& y) { return x + (-y); }

SeriesAE operator*(const SeriesAE& x, const SeriesAE& y) {
  const int na = std::min(x.order_a_, y.order_a_);
  const int ne = std::min(x.order_e_, y.order_e_);
  // Flatten (n, q) -> n * (ne + 1) + q is not closed under convolution
  // truncation in e, so convolve row by row in a.
  std::vector<std::vector<Rational>> xr(static_cast<std::size_t>(na + 1)), yr(static_cast<std::size_t>(na + 1));
  for (auto& r : xr) r.resize(static_cast<std::size_t>(ne + 1));
  for (auto& r : yr) r.resize(static_cast<std::size_t>(ne + 1));
  for (const auto& [k, c] : x.terms_)
    if (k.first <= na && k.second <= ne) xr[k.first][k.second] = c;
  for (const auto& [k, c] : y.terms_)
    if (k.first <= na && k.second <= ne) yr[k.first][k.second] = c;
  auto nonzero = [](const std::vector<Rational>& r) {
    return std::any_of(r.begin(), r.end(), [](const Rational& v) { return !v.is_zero(); });
  };
  SeriesAE s(na, ne);
  for (int i = 0; i <= na; ++i) {
    if (!nonzero(xr[i])) continue;
    for (int j = 0; i + j <= na; ++j) {
      if (!nonzero(yr[j])) continue;
      auto row = detail::convolve(xr[i], yr[j], ne);
      for (int q = 0; q < static_cast<int>(row.size()); ++q) s.add_term(i + j, q, row[q]);
    }
  }
  return s;
}

SeriesAE operator*(const Rational& c, const SeriesAE& x) {
  SeriesAE s(x.order_a_, x.order_e_);
  if (c.is_zero()) return s;
  for (const auto& [k, v] : x.terms_) s.terms_.emplace(k, c * v);
  return s;
}

std::string SeriesAE::to_text() const {
  std::ostringstream os;
  for (const auto& [k, c] : terms_)
    os << c.numerator() << '/' << c.denominator() << " * a^" << k.first << " * e^" << k.second << " + ";
  if (terms_.empty()) os << "0 + ";
  os << "O(a^" << order_a_ + 1 << ", e^" << order_e_ + 1 << ')';
  return os.str();
}

SeriesAE SeriesAE::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  SeriesAE::Terms terms;
  for (;;) {
    in >> std::ws;
    if (in.peek() == 'O') {
      expect_word(in, "O(a^");
      int na = read_int(in) - 1;
      expect(in, ',');
      expect_word(in, "e^");
      int ne = read_int(in) - 1;
      expect(in, ')');
      return SeriesAE(na, ne, std::move(terms));
    }
    Rational c = read_rational(in);
    in >> std::ws;
    if (in.peek() == '*') {
      expect(in, '*');
      expect_word(in, "a^");
      int n = read_int(in);
      expect(in, '*');
      expect_word(in, "e^");
      int q = read_int(in);
      terms[{n, q}] = c;
    } else if (!c.is_zero()) {
      throw std::invalid_argument("series text: bare non-zero constant");
    }
    expect(in, '+');
  }
}

}  // namespace pcr3bp
