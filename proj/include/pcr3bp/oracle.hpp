#pragma once

// Series-free floating-point references: Kepler's equation, the perturbing
// function itself, and Hansen / Fourier coefficients by periodic quadrature.

#include "pcr3bp/fourier.hpp"

namespace pcr3bp {

struct OrbitPoint {
  double ell = 0;  // mean anomaly
  double u = 0;    // eccentric anomaly
  double r_over_a = 1;
  double f = 0;  // true anomaly
  double e = 0;
};

/// Newton on u - e sin u = ell starting from u = ell, bisection if that fails.
OrbitPoint solve_kepler(double ell, double e);

/// (1/2pi) int_0^{2pi} (r/a)^n cos(m f - k l) dl, trapezoid on a uniform l-grid.
double oracle_hansen(int n, int m, int k, double e, int samples = 4096);

/// F = r cos(f+g) - 1/sqrt(1 + r^2 - 2 r cos(f+g)), r = a (1 - e cos u).
double oracle_F(double a, double e, double ell, double g);

/// f_{m,k} recovered from F by a tensor-product trapezoid rule in (g, l),
/// with weight 1/(2 pi^2), or 1/(4 pi^2) for (0,0).
double oracle_fourier(int m, int k, double a, double e, int samples = 256);

}  // namespace pcr3bp
