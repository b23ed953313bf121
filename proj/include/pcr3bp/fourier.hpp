#pragma once

// Fourier coefficients f_{m,k}(a,e) of the planar circular restricted
// three-body perturbing function,
//
//   F = sum over modes of f_{m,k}(a,e) cos(m g + k l),
//
// assembled from Legendre weights and Hansen coefficients, plus the closed
// forms of their leading coefficients t_{m,k}.

#include "pcr3bp/series.hpp"

#include <stdexcept>
#include <string>

namespace pcr3bp {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Mode {
  int m = 0;
  int k = 0;
  /// First non-null component positive and gcd(m, k) = 1.
  bool in_G2 = false;
  /// Lowest power of a present in f_{m,k}: m + 2 for m in {0, 1}, else m.
  int m_star = 0;

  static Mode of(int m, int k);
  Mode scaled(int j) const { return of(j * m, j * k); }
  friend bool operator==(const Mode& x, const Mode& y) { return x.m == y.m && x.k == y.k; }
};

/// C_{n,m}: weight of cos(m psi) in the Legendre polynomial P_n(cos psi).
Rational legendre_weight(int n, int m);

/// True when a-truncation order `order_a` reaches the first non-zero stratum.
inline bool visible(const Mode& mode, int order_a) { return order_a >= mode.m_star; }

/// Exact f_{m,k} truncated at a^{order_a}, e^{order_e}; m >= 0.  Returns the
/// zero series when the mode is not visible at this order.
SeriesAE fourier_coefficient(const Mode& mode, int order_a, int order_e);

enum class TmkCase { AMinus, APlus, AEqual, BMinus, BPlus, BEqual };
std::string case_label(TmkCase c);

struct AsymptoticCoefficient {
  Mode mode;
  Rational t_value;
  TmkCase case_label = TmkCase::AEqual;
  int leading_e_power = 0;
  int leading_a_power = 0;
};

/// Closed form of t_{m,k}; m >= 0.
AsymptoticCoefficient t_mk(const Mode& mode);

struct ConsistencyReport {
  Mode mode;
  /// Coefficient of e^{|m-k|} a^{m*} in the assembled series.
  Rational series_value;
  /// 2 t_{m,k}, or t_{0,0} for the a^2 coefficient of f_{0,0} + 1.
  Rational expected;
  bool pass = false;
};

ConsistencyReport asymptotic_consistency(const Mode& mode, int order_a, int order_e);

/// Dense coefficient matrix, rows a^n (0..order_a), columns e^q (0..order_e).
std::string coefficient_matrix_csv(const SeriesAE& f);
std::string coefficient_matrix_json(const Mode& mode, const SeriesAE& f);

}  // namespace pcr3bp
