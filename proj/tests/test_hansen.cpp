#include <doctest.h>

#include "pcr3bp/hansen.hpp"
#include "pcr3bp/special_series.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace pcr3bp;

namespace {

SeriesE poly(int order, std::initializer_list<std::pair<int, Rational>> terms) {
  SeriesE s(order);
  for (const auto& [q, c] : terms) s.add_term(q, c);
  return s;
}

// (1/2pi) * integral over the mean anomaly of (r/a)^n cos(m f - k l),
// done in the eccentric anomaly u where the integrand is smooth and periodic.
double quad_hansen(int n, int m, int k, double e, int samples = 2048) {
  const double eta = std::sqrt(1 - e * e);
  double acc = 0;
  for (int i = 0; i < samples; ++i) {
    const double u = 2 * M_PI * i / samples;
    const double rho = 1 - e * std::cos(u);
    const double f = std::atan2(eta * std::sin(u), std::cos(u) - e);
    const double l = u - e * std::sin(u);
    acc += std::pow(rho, n) * std::cos(m * f - k * l) * rho;
  }
  return acc / samples;
}

struct GoldenRow {
  int k, n, m, order;
  SeriesE value;
};

std::vector<GoldenRow> load_goldens() {
  std::ifstream in(std::string(PCR3BP_TEST_DATA) + "/hansen_tables.txt");
  REQUIRE(in.good());
  std::vector<GoldenRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto bar = line.find('|');
    std::istringstream head(line.substr(0, bar));
    GoldenRow r{0, 0, 0, 0, SeriesE()};
    head >> r.k >> r.n >> r.m >> r.order;
    r.value = SeriesE::parse(line.substr(bar + 1));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

TEST_SUITE("hansen_engine") {

TEST_CASE("k = 0 closed form") {
  CHECK(hansen_k0_closed(0, 1, 7) == poly(7, {{1, -1}}));
  CHECK(hansen_k0_closed(2, 0, 7) == poly(7, {{0, 1}, {2, Rational(3, 2)}}));
  CHECK(hansen_k0_closed(5, 1, 7) ==
        poly(7, {{1, Rational(-7, 2)}, {3, Rational(-35, 4)}, {5, Rational(-35, 16)}}));
  CHECK(hansen_k0_closed(4, -2, 9) == hansen_k0_closed(4, 2, 9));
}

TEST_CASE("k = 0 recursions reproduce the closed form") {
  CHECK(hansen_k0_recursive(3, 3, 7).value == poly(7, {{3, Rational(-35, 8)}}));
  CHECK(hansen_k0_recursive(2, 2, 7).value == poly(7, {{2, Rational(5, 2)}}));
  CHECK(hansen_k0_recursive(0, 0, 7).value == SeriesE::constant(1, 7));
  int fallbacks = 0;
  for (int n = 0; n <= 15; ++n)
    for (int m = 0; m <= 6; ++m) {
      RecursionResult r = hansen_k0_recursive(n, m, 14);
      CHECK(r.value == hansen_k0_closed(n, m, 14));
      fallbacks += r.fell_back;
    }
  // n - m + 1 = 0 along the way for every n < m - 1
  CHECK(fallbacks > 0);
}

TEST_CASE("k = 0 negative exponents") {
  // X_0^{-2,0} is the series of (1-e^2)^{-1/2}
  CHECK(hansen_k0_negative(1, 0, 6) == eta_power(-1, 6));
  CHECK(hansen_k0_negative(1, 0, 4) == poly(4, {{0, 1}, {2, Rational(1, 2)}, {4, Rational(3, 8)}}));
  CHECK(hansen_k0_negative(0, 0, 9) == SeriesE::constant(1, 9));
  for (int n = 1; n <= 5; ++n)
    for (int m = n; m <= n + 2; ++m) CHECK(hansen_k0_negative(n, m, 10).is_zero());

  for (double e : {0.1, 0.2, 0.3}) {
    for (int n = 0; n <= 6; ++n)
      for (int m = 0; m <= 4; ++m) {
        const double series = hansen_k0_negative(n, m, 60).evaluate(static_cast<long double>(e));
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(e);
        CHECK(series == doctest::Approx(quad_hansen(-(n + 1), m, 0, e)).epsilon(1e-10).scale(1));
      }
  }
}

TEST_CASE("Newcomb operators") {
  CHECK(hansen_newcomb({1, 0, 1}, 7) == poly(7, {{1, Rational(-1, 2)},
                                                  {3, Rational(3, 16)},
                                                  {5, Rational(-5, 384)},
                                                  {7, Rational(7, 18432)}}));
  CHECK(hansen_newcomb({0, 1, 1}, 6) ==
        poly(6, {{0, 1}, {2, -1}, {4, Rational(7, 64)}, {6, Rational(-5, 288)}}));
  CHECK(hansen_newcomb({2, 1, 1}, 6) ==
        poly(6, {{0, 1}, {2, Rational(1, 2)}, {4, Rational(-25, 64)}, {6, Rational(-23, 1152)}}));

  NewcombTable table;
  CHECK(table.value(3, 1, -1, 2).is_zero());
  CHECK(table.value(3, 1, 2, -1).is_zero());
  CHECK(table.value(2, 1, 0, 0) == 1);
  CHECK(table.value(2, 1, 1, 0) == 0);  // m - n/2
  CHECK(table.value(3, 2, 1, 0) == Rational(1, 2));
  for (int n = -3; n <= 5; ++n)
    for (int m = -3; m <= 3; ++m)
      for (int rho = 0; rho <= 5; ++rho)
        for (int sigma = rho + 1; sigma <= 6; ++sigma)
          CHECK(table.value(n, m, rho, sigma) == table.value(n, -m, sigma, rho));
}

TEST_CASE("Wnuk expansion") {
  CHECK(hansen_wnuk({1, 2, 4}, 6) == poly(6, {{2, 2}, {4, Rational(-19, 3)}, {6, Rational(55, 8)}}));
  CHECK(hansen_wnuk({1, 0, 8}, 10) == poly(10, {{8, Rational(-64, 315)}, {10, Rational(256, 567)}}));
  CHECK(hansen_wnuk({2, 0, 10}, 12) ==
        poly(12, {{10, Rational(-15625, 290304)}, {12, Rational(390625, 3193344)}}));
}

TEST_CASE("Balmino expansion") {
  CHECK(hansen_balmino(2, 2, 2, 0) == SeriesE::constant(1, 0));
  CHECK(hansen_balmino(0, 1, 1, 6) ==
        poly(6, {{0, 1}, {2, -1}, {4, Rational(7, 64)}, {6, Rational(-5, 288)}}));
  CHECK(hansen_balmino(0, 3, 8, 9) ==
        poly(9, {{5, Rational(2611, 80)}, {7, Rational(-87599, 480)}, {9, Rational(155981, 384)}}));
  CHECK_THROWS_AS(hansen_balmino(1, 3, 1, 5), MethodError);
}

TEST_CASE("dispatcher") {
  CHECK(hansen({3, 0, 4}, 7) == poly(7, {{4, Rational(1, 16)}, {6, Rational(-3, 20)}}));
  CHECK(hansen({0, 1, 10}, 11) ==
        poly(11, {{9, Rational(390625, 72576)}, {11, Rational(-5078125, 290304)}}));
  CHECK(hansen({5, -1, -1}, 7) == hansen({5, 1, 1}, 7));
  CHECK(hansen({5, -1, -1}, 7, HansenMethod::Balmino) == hansen({5, 1, 1}, 7, HansenMethod::Newcomb));
  CHECK_THROWS_AS(hansen({2, 1, 3}, 5, HansenMethod::K0), MethodError);
  CHECK_THROWS_AS(parse_method("laplace"), MethodError);
  CHECK(parse_method("wnuk") == HansenMethod::Wnuk);
  CHECK(method_name(HansenMethod::Balmino) == "balmino");

  // lower-order requests are slices of the cached series
  const SeriesE high = hansen({2, 3, 7}, 20);
  CHECK(hansen({2, 3, 7}, 11) == high.truncated(11));
  CHECK(hansen({2, -3, -7}, 15) == high.truncated(15));
}

TEST_CASE("reference tables reproduce exactly") {
  // Entries where the printed table disagrees with every construction here.
  // For each, the coefficient of e^q is re-derived from quadrature.
  struct Misprint {
    int k, n, m;
    std::vector<int> powers;
  };
  const std::vector<Misprint> misprints = {{0, 9, 1, {7}}, {1, 5, 3, {4}}, {4, 6, 1, {3, 5}},
                                           {4, 7, 1, {5}}, {8, 8, 1, {9}}, {8, 8, 2, {8}}};
  auto is_misprint = [&](const GoldenRow& r) {
    for (const auto& p : misprints)
      if (p.k == r.k && p.n == r.n && p.m == r.m) return true;
    return false;
  };

  const auto rows = load_goldens();
  CHECK(rows.size() == 236);
  for (const auto& r : rows) {
    CAPTURE(r.k);
    CAPTURE(r.n);
    CAPTURE(r.m);
    const SeriesE x = hansen({r.n, r.m, r.k}, r.order);
    if (!is_misprint(r)) {
      CHECK(x == r.value);
      continue;
    }
    CHECK(x != r.value);
  }

  const double e = 0.1;
  for (const auto& p : misprints) {
    CAPTURE(p.k);
    CAPTURE(p.n);
    CAPTURE(p.m);
    const GoldenRow* printed = nullptr;
    for (const auto& r : rows)
      if (r.k == p.k && r.n == p.n && r.m == p.m) printed = &r;
    REQUIRE(printed != nullptr);
    const SeriesE full = hansen({p.n, p.m, p.k}, 40);
    const SeriesE diff = full.truncated(printed->order) - printed->value;
    std::vector<int> differing;
    for (const auto& [q, c] : diff.terms()) differing.push_back(q);
    CHECK(differing == p.powers);

    for (int q : p.powers) {
      const double ours = full.coeff(q).to_double();
      const double theirs = printed->value.coeff(q).to_double();
      const double rest = full.evaluate(e) - ours * std::pow(e, q);
      const double estimate = (quad_hansen(p.n, p.m, p.k, e) - rest) / std::pow(e, q);
      CAPTURE(q);
      CAPTURE(estimate);
      CHECK(std::abs(estimate - ours) < 1e-3 * std::abs(ours - theirs));
    }
  }
}

TEST_CASE("all methods agree (property)") {
  const int order = 12;
  for (int n = 0; n <= 8; ++n)
    for (int m = -3; m <= 3; ++m)
      for (int k = -10; k <= 10; ++k) {
        const HansenKey key{n, m, k};
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(k);
        const SeriesE ref = hansen_newcomb(key, order);
        CHECK(hansen_wnuk(key, order) == ref);
        if (k - m >= 0) CHECK(hansen_balmino(n, m, k, order) == ref);
        if (k == 0) CHECK(hansen_k0_closed(n, m, order) == ref);
      }
}

TEST_CASE("structural properties") {
  for (int n = -3; n <= 8; ++n)
    for (int m = -4; m <= 4; ++m)
      for (int k = -6; k <= 6; ++k) {
        const int order = 14;
        const SeriesE x = hansen({n, m, k}, order);
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(k);
        CHECK(x.coeff(0) == Rational(k == m ? 1 : 0));
        CHECK(x == hansen({n, -m, -k}, order));
        // (r/a)^0 exp(0) = 1 has no harmonics
        if (n >= 0 && !(n == 0 && m == 0)) {
          REQUIRE(x.lowest_power().has_value());
          const int low = *x.lowest_power();
          CHECK(low >= std::abs(k - m));
          CHECK((low - std::abs(k - m)) % 2 == 0);
          // the leading Newcomb operator can vanish, e.g. m - n/2 for n = 2m
          NewcombTable table;
          const int d = k - m;
          const bool lead = !table.value(n, m, std::max(d, 0), std::max(-d, 0)).is_zero();
          if (lead) CHECK(low == std::abs(k - m));
        }
      }
}

TEST_CASE("agreement with quadrature (property)") {
  for (double e : {0.1, 0.3}) {
    for (int n = -2; n <= 4; ++n)
      for (int m = -2; m <= 3; ++m)
        for (int k = -4; k <= 6; ++k) {
          const int order = 40;
          const SeriesE lead = hansen({n, m, k}, order + 2);
          // size of the first omitted terms
          const double tail = std::abs((lead - lead.truncated(order)).evaluate(e));
          if (tail > 1e-11) continue;
          CAPTURE(n);
          CAPTURE(m);
          CAPTURE(k);
          CAPTURE(e);
          const double series = lead.truncated(order).evaluate(static_cast<long double>(e));
          CHECK(std::abs(series - quad_hansen(n, m, k, e)) <= 1e-9);
        }
  }
}

TEST_CASE("concurrent cache use is deterministic") {
  HansenCache cache;
  std::vector<SeriesE> results(4);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] { results[t] = cache.get({3, 2, 5}, 14 + t); });
  for (auto& th : pool) th.join();
  for (int t = 0; t < 4; ++t) CHECK(results[t] == hansen_newcomb({3, 2, 5}, 14 + t));
  CHECK(cache.size() == 1);
}

TEST_CASE("table generator") {
  const std::string csv = hansen_table(0, 2, 0, 1, 0, 4, TableFormat::Csv);
  CHECK(csv.find("\"1 + 3/2 e^2\"") != std::string::npos);
  CHECK(csv.find("-e") != std::string::npos);
  CHECK_THROWS_AS(hansen_table(3, 1, 0, 1, 0, 4, TableFormat::Text), MethodError);
}

}  // TEST_SUITE
