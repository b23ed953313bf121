#pragma once

// Auxiliary e-series shared by the Hansen-coefficient methods.

#include "pcr3bp/rational.hpp"
#include "pcr3bp/series.hpp"

namespace pcr3bp {

/// binom(top, p) for any integer top and p >= 0, with
/// binom(-mu, p) = (-1)^p binom(mu + p - 1, p) for mu > 0.
BigInt binomial_general(long top, long p);

/// binom(x, p) = x (x-1) ... (x-p+1) / p! for rational x.
Rational binomial_rational(const Rational& x, long p);

/// (1 - e^2)^{p/2} truncated at `order`.
SeriesE eta_power(int p, int order);

/// sqrt(1 - e^2) truncated at `order`.
inline SeriesE sqrt_one_minus_e2(int order) { return eta_power(1, order); }

/// beta(e) = e / (1 + sqrt(1 - e^2)).
SeriesE beta_series(int order);

/// J_t(k e) as a series in e:  sum_s (-1)^s / (s! (t+s)!) (k e / 2)^{t+2s},
/// with J_{-t} = (-1)^t J_t.
SeriesE bessel_J(int t, int k, int order);

}  // namespace pcr3bp
