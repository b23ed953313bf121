#include <doctest.h>

#include "pcr3bp/fourier.hpp"
#include "pcr3bp/hansen.hpp"
#include "pcr3bp/oracle.hpp"
#include "pcr3bp/special_series.hpp"

#include <cmath>
#include <vector>

using namespace pcr3bp;

namespace {

// Weight of cos(m psi) in P_n(cos psi), from the monomial coefficients of P_n
// (Bonnet recursion) and cos^j = 2^{-j} sum_i binom(j, i) cos((j - 2i) psi).
Rational legendre_oracle(int n, int m) {
  std::vector<std::vector<Rational>> P(static_cast<std::size_t>(n + 2));
  P[0] = {Rational(1)};
  P[1] = {Rational(0), Rational(1)};
  for (int j = 1; j < n; ++j) {
    std::vector<Rational> next(static_cast<std::size_t>(j + 2));
    for (int i = 0; i <= j; ++i) next[i + 1] = next[i + 1] + Rational(2 * j + 1, j + 1) * P[j][i];
    for (int i = 0; i < j; ++i) next[i] = next[i] - Rational(j, j + 1) * P[j - 1][i];
    P[j + 1] = next;
  }
  Rational w;
  for (int j = 0; j <= n; ++j) {
    const Rational c = P[n][j];
    if (c.is_zero()) continue;
    for (int i = 0; i <= j; ++i) {
      // both +m and -m contribute to the full exponential sum; count one side
      if (j - 2 * i != m) continue;
      w = w + c * Rational(binomial_general(j, i)) / pow(Rational(2), j);
    }
  }
  return w;
}

}  // namespace

TEST_SUITE("fourier_assembly") {

TEST_CASE("modes") {
  const Mode a = Mode::of(3, 4);
  CHECK(a.in_G2);
  CHECK(a.m_star == 3);
  CHECK(Mode::of(0, 1).m_star == 2);
  CHECK(Mode::of(1, -5).m_star == 3);
  CHECK(Mode::of(0, 1).in_G2);
  CHECK_FALSE(Mode::of(0, -1).in_G2);
  CHECK_FALSE(Mode::of(2, 4).in_G2);
  CHECK_FALSE(Mode::of(-1, 3).in_G2);
  CHECK(Mode::of(5, -2).in_G2);
  CHECK(Mode::of(3, 4).scaled(2) == Mode::of(6, 8));
}

TEST_CASE("Legendre weights") {
  CHECK(legendre_weight(2, 0) == Rational(1, 4));
  CHECK(legendre_weight(2, 2) == Rational(3, 8));
  CHECK(legendre_weight(3, 1) == Rational(3, 16));
  CHECK_THROWS_AS(legendre_weight(3, 2), DomainError);
  CHECK_THROWS_AS(legendre_weight(2, 4), DomainError);
  for (int n = 0; n <= 14; ++n)
    for (int m = n % 2; m <= n; m += 2) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(legendre_weight(n, m) == legendre_oracle(n, m));
      CHECK(legendre_weight(n, -m) == legendre_weight(n, m));
    }
}

TEST_CASE("assembled coefficients") {
  SeriesAE f00(2, 2);
  f00.add_term(0, 0, -1);
  f00.add_term(2, 0, Rational(-1, 4));
  f00.add_term(2, 2, Rational(-3, 8));
  CHECK(fourier_coefficient(Mode::of(0, 0), 2, 2) == f00);

  SeriesAE f22(2, 0);
  f22.add_term(2, 0, Rational(-3, 4));
  CHECK(fourier_coefficient(Mode::of(2, 2), 2, 0) == f22);

  const SeriesAE f11 = fourier_coefficient(Mode::of(1, 1), 3, 0);
  CHECK(f11.coeff(3, 0) == Rational(-3, 8));
  CHECK(f11.terms().size() == 1);

  CHECK(fourier_coefficient(Mode::of(1, 1), 2, 2).is_zero());
  CHECK_THROWS_AS(fourier_coefficient(Mode::of(-1, 2), 4, 4), DomainError);
}

TEST_CASE("support and parity (property)") {
  for (int m = 0; m <= 5; ++m)
    for (int k = -4; k <= 6; ++k) {
      const Mode mode = Mode::of(m, k);
      const SeriesAE f = fourier_coefficient(mode, 12, 12);
      CAPTURE(m);
      CAPTURE(k);
      int min_q = 1 << 30, min_q_lead = 1 << 30;
      for (const auto& [key, c] : f.terms()) {
        const auto [n, q] = key;
        if (m == 0 && k == 0 && n == 0) continue;
        CHECK(n >= mode.m_star);
        CHECK((n - m) % 2 == 0);
        min_q = std::min(min_q, q);
        if (n == mode.m_star) min_q_lead = std::min(min_q_lead, q);
      }
      if (std::abs(m - k) > 12) continue;
      CHECK(min_q >= std::abs(m - k));
      if (!t_mk(mode).t_value.is_zero()) {
        CHECK(min_q == std::abs(m - k));
        CHECK(min_q_lead == std::abs(m - k));
      }
    }
}

TEST_CASE("cosine parity for m = 0") {
  for (int k = 1; k <= 6; ++k)
    CHECK(fourier_coefficient(Mode::of(0, k), 10, 10) == fourier_coefficient(Mode::of(0, -k), 10, 10));
}

TEST_CASE("f_{0,0} at e = 0 has the Legendre a^2 term only") {
  SeriesAE g = fourier_coefficient(Mode::of(0, 0), 6, 0);
  g.add_term(0, 0, 1);
  g.add_term(2, 0, Rational(1, 4));
  CHECK(g.coeff(2, 0).is_zero());
  CHECK(g.coeff(4, 0) == -legendre_weight(4, 0));
}

TEST_CASE("closed-form leading coefficients") {
  const auto t22 = t_mk(Mode::of(2, 2));
  CHECK(t22.t_value == Rational(-3, 8));
  CHECK(case_label(t22.case_label) == "A=");
  const auto t00 = t_mk(Mode::of(0, 0));
  CHECK(t00.t_value == Rational(-1, 4));
  CHECK(t00.t_value == -legendre_weight(2, 0));
  CHECK(case_label(t00.case_label) == "B=");
  const auto t23 = t_mk(Mode::of(2, 3));
  CHECK(t23.t_value == Rational(-3, 8));
  CHECK(case_label(t23.case_label) == "A-");
  CHECK(case_label(t_mk(Mode::of(3, 1)).case_label) == "A+");
  CHECK(case_label(t_mk(Mode::of(1, 4)).case_label) == "B-");
  CHECK(case_label(t_mk(Mode::of(1, -2)).case_label) == "B+");
  CHECK(t_mk(Mode::of(0, 1)).t_value == Rational(1, 4));
  CHECK(t_mk(Mode::of(5, -2)).leading_e_power == 7);
  CHECK(t_mk(Mode::of(5, -2)).leading_a_power == 5);
}

TEST_CASE("leading coefficients from Newcomb operators (property)") {
  // t = -C_{m*,m} times the first Newcomb operator of X_k^{m*,m}
  for (int m = 0; m <= 8; ++m)
    for (int k = m - 10; k <= m + 10; ++k) {
      const Mode mode = Mode::of(m, k);
      NewcombTable table;
      const int d = k - m;
      const Rational lead = table.value(mode.m_star, m, std::max(d, 0), std::max(-d, 0));
      CAPTURE(m);
      CAPTURE(k);
      CHECK(t_mk(mode).t_value == -legendre_weight(mode.m_star, m) * lead);
    }
}

TEST_CASE("asymptotic consistency") {
  CHECK(asymptotic_consistency(Mode::of(2, 2), 2, 0).pass);
  CHECK(asymptotic_consistency(Mode::of(2, 2), 2, 0).series_value == Rational(-3, 4));
  const auto r00 = asymptotic_consistency(Mode::of(0, 0), 2, 2);
  CHECK(r00.pass);
  CHECK(r00.series_value == Rational(-1, 4));
  CHECK(asymptotic_consistency(Mode::of(1, 4), 3, 3).pass);
  CHECK_FALSE(asymptotic_consistency(Mode::of(1, 4), 2, 3).pass);

  int checked = 0;
  for (int m = 0; m <= 10; ++m) {
    const int ms = Mode::of(m, 0).m_star;
    if (ms > 10) continue;
    for (int k = m - 10; k <= m + 10; ++k) {
      const Mode mode = Mode::of(m, k);
      CAPTURE(m);
      CAPTURE(k);
      CHECK(asymptotic_consistency(mode, mode.m_star, std::abs(m - k)).pass);
      ++checked;
    }
  }
  CHECK(checked == 11 * 21);
}

TEST_CASE("series against quadrature") {
  const double a = 0.1, e = 0.1;
  for (int m = 0; m <= 8; ++m)
    for (int k = -(8 - m); k <= 8 - m; ++k) {
      const SeriesAE f = fourier_coefficient(Mode::of(m, k), 30, 30);
      CAPTURE(m);
      CAPTURE(k);
      CHECK(std::abs(f.evaluate(a, e) - oracle_fourier(m, k, a, e, 128)) <= 1e-8);
    }
}

TEST_CASE("coefficient matrices") {
  const SeriesAE f = fourier_coefficient(Mode::of(0, 0), 2, 1);
  const std::string csv = coefficient_matrix_csv(f);
  CHECK(csv == "n\\q,0,1\n0,-1/1,0/1\n1,0/1,0/1\n2,-1/4,0/1\n");
  const std::string json = coefficient_matrix_json(Mode::of(0, 0), f);
  CHECK(json.find("\"-1/4\"") != std::string::npos);
  CHECK(json == coefficient_matrix_json(Mode::of(0, 0), fourier_coefficient(Mode::of(0, 0), 2, 1)));
}

}  // TEST_SUITE
