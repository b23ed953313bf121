#include "pcr3bp/oracle.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace pcr3bp {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

void check_eccentricity(double e) {
  if (!(e >= 0 && e < 1)) throw DomainError("eccentricity must lie in [0, 1)");
}

void check_domain(double a, double e) {
  check_eccentricity(e);
  if (!(a >= 0) || a * (1 + e) >= 1) throw DomainError("need 0 <= a and a (1 + e) < 1");
}

}  // namespace

OrbitPoint solve_kepler(double ell, double e) {
  check_eccentricity(e);
  // Solve for the reduced anomaly in [-pi, pi) and add the turns back.
  const double turns = std::floor((ell + std::numbers::pi) / kTwoPi);
  const double M = ell - turns * kTwoPi;
  auto g = [&](double u) { return u - e * std::sin(u) - M; };

  double u = M;
  bool ok = false;
  for (int it = 0; it < 50; ++it) {
    const double step = g(u) / (1 - e * std::cos(u));
    u -= step;
    if (!std::isfinite(u)) break;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(u))) {
      ok = true;
      break;
    }
  }
  if (!ok || std::abs(g(u)) > 1e-14) {
    // g is increasing and changes sign on [M - e, M + e]
    double lo = M - e, hi = M + e;
    for (int it = 0; it < 200 && hi - lo > 0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (g(mid) < 0 ? lo : hi) = mid;
    }
    u = std::abs(g(lo)) < std::abs(g(hi)) ? lo : hi;
  }

  OrbitPoint p;
  p.e = e;
  p.ell = ell;
  p.u = u + turns * kTwoPi;
  p.r_over_a = 1 - e * std::cos(u);
  const double eta = std::sqrt(1 - e * e);
  p.f = std::atan2(eta * std::sin(u), std::cos(u) - e) + turns * kTwoPi;
  return p;
}

double oracle_hansen(int n, int m, int k, double e, int samples) {
  check_eccentricity(e);
  if (samples < 1) throw DomainError("need at least one sample");
  double acc = 0;
  for (int i = 0; i < samples; ++i) {
    const double ell = kTwoPi * i / samples;
    const OrbitPoint p = solve_kepler(ell, e);
    acc += std::pow(p.r_over_a, n) * std::cos(m * p.f - k * ell);
  }
  return acc / samples;
}

double oracle_F(double a, double e, double ell, double g) {
  check_domain(a, e);
  const OrbitPoint p = solve_kepler(ell, e);
  const double r = a * p.r_over_a;
  const double c = std::cos(p.f + g);
  return r * c - 1 / std::sqrt(1 + r * r - 2 * r * c);
}

double oracle_fourier(int m, int k, double a, double e, int samples) {
  check_domain(a, e);
  if (samples < 1) throw DomainError("need at least one sample");
  std::vector<OrbitPoint> orbit(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) orbit[i] = solve_kepler(kTwoPi * i / samples, e);

  double acc = 0;
  for (int i = 0; i < samples; ++i) {
    const OrbitPoint& p = orbit[i];
    const double r = a * p.r_over_a;
    for (int j = 0; j < samples; ++j) {
      const double g = kTwoPi * j / samples;
      const double c = std::cos(p.f + g);
      const double F = r * c - 1 / std::sqrt(1 + r * r - 2 * r * c);
      acc += F * std::cos(m * g + k * p.ell);
    }
  }
  const double mean = acc / (static_cast<double>(samples) * samples);
  // mean * (2 pi)^2 times 1/(2 pi^2), resp. 1/(4 pi^2)
  return (m == 0 && k == 0) ? mean : 2 * mean;
}

}  // namespace pcr3bp
