#pragma once

// Hansen coefficients X_k^{n,m}(e) as exact truncated e-series.
//
//   (r/a)^n exp(i m f) = sum_k X_k^{n,m}(e) exp(i k l)
//
// Four independent constructions are provided (hypergeometric closed form
// and recursions for k = 0, Newcomb operators, the Bessel-function route of
// Wnuk, and the triple sum of Balmino) together with a caching dispatcher.

#include "pcr3bp/series.hpp"

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>

namespace pcr3bp {

class MethodError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HansenKey {
  int n = 0;
  int m = 0;
  int k = 0;

  /// Representative under X_k^{n,m} = X_{-k}^{n,-m}: k > 0, or k = 0 and m >= 0.
  HansenKey canonical() const {
    if (k < 0 || (k == 0 && m < 0)) return {n, -m, -k};
    return *this;
  }
  friend auto operator<=>(const HansenKey&, const HansenKey&) = default;
};

enum class HansenMethod { Auto, K0, Newcomb, Wnuk, Balmino };

HansenMethod parse_method(const std::string& name);
std::string method_name(HansenMethod method);

/// X_0^{n,m} from the hypergeometric closed form, n >= 0, any sign of m.
SeriesE hansen_k0_closed(int n, int m, int order);

struct RecursionResult {
  SeriesE value;
  /// True when the m-recursion hit n - m + 1 = 0 and the closed form was used.
  bool fell_back = false;
};

/// X_0^{n,m} by the three-term recursion in n (seeded at n = 0, 1) followed by
/// the recursion in m.  m >= 0.
RecursionResult hansen_k0_recursive(int n, int m, int order);

/// X_0^{-(n+1),m}, n >= 0, m >= 0.
SeriesE hansen_k0_negative(int n, int m, int order);

/// Newcomb operators X_{rho,sigma}^{n,m} by their recursions, memoized.
/// Not synchronized; hansen_newcomb() guards its shared instance.
class NewcombTable {
 public:
  Rational value(int n, int m, int rho, int sigma);
  std::size_t size() const { return values_.size(); }

 private:
  std::map<std::tuple<int, int, int, int>, Rational> values_;
};

/// X_k^{n,m} = sum over rho - sigma = k - m of X_{rho,sigma}^{n,m} e^{rho+sigma}.
SeriesE hansen_newcomb(const HansenKey& key, int order);

/// Bessel-function expansion in beta = e / (1 + sqrt(1 - e^2)).
SeriesE hansen_wnuk(const HansenKey& key, int order);

/// Balmino triple sum; requires s = k - m >= 0.
SeriesE hansen_balmino(int n, int m, int k, int order);

/// Thread-safe memo of Hansen coefficients under canonical keys.  A request
/// below the cached order is served by truncating the stored series.
class HansenCache {
 public:
  SeriesE get(const HansenKey& key, int order);
  std::size_t size() const;
  void clear();

 private:
  mutable std::shared_mutex mu_;
  std::map<HansenKey, SeriesE> store_;
};

HansenCache& global_hansen_cache();

/// Dispatcher.  Auto uses the closed forms for k = 0 and Wnuk otherwise,
/// memoized in the global cache; explicit methods always recompute.
SeriesE hansen(const HansenKey& key, int order, HansenMethod method = HansenMethod::Auto);

enum class TableFormat { Text, Csv };

/// Rows n, columns m of X_k^{n,m} with exact coefficients.
std::string hansen_table(int n_lo, int n_hi, int m_lo, int m_hi, int k, int order, TableFormat format,
                         HansenMethod method = HansenMethod::Auto);

}  // namespace pcr3bp
