#pragma once

// Zero curves of the Fourier coefficients f_{m,k} in the unit square
// (a, e) in (0,1)^2, their pairwise intersections with the harmonics
// f_{2m,2k}, f_{3m,3k}, and triangle diagnostics for near triple zeros.

#include "pcr3bp/fourier.hpp"

#include <array>
#include <string>
#include <vector>

namespace pcr3bp {

struct Point {
  double a = 0;
  double e = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// f_{m,k} divided by its leading monomial 2|t_{m,k}| e^{|m-k|} a^{m*},
/// a polynomial evaluated in long double.
class TracedFunction {
 public:
  TracedFunction(const Mode& mode, int order_a, int order_e);

  const Mode& mode() const { return mode_; }
  /// The truncated series vanishes identically (mode not visible).
  bool is_zero() const { return zero_; }
  /// t_{m,k} = 0, so the normalization fell back to 1.
  bool degenerate_scale() const { return degenerate_; }

  long double value(long double a, long double e) const;
  /// Value and partial derivatives from the termwise-differentiated series.
  void value_grad(long double a, long double e, long double& v, long double& va, long double& ve) const;

  /// Row polynomials R_n(e); value(a, e) = sum_n R_n(e) a^n.
  std::vector<long double> rows_at(long double e) const;
  /// Column polynomials S_q(a); value(a, e) = sum_q S_q(a) e^q.
  std::vector<long double> columns_at(long double a) const;

 private:
  Mode mode_;
  bool zero_ = false;
  bool degenerate_ = false;
  int na_ = 0, ne_ = 0;
  // dense, c_[n * (ne_ + 1) + q]
  std::vector<long double> c_, ca_, ce_;
};

/// Uniform grid over [delta, 1 - delta]^2 with delta = 1/grid_n, grid_n
/// points per axis; values(i, j) is the normalized value at (a_i, e_j).
struct GridValues {
  int grid_n = 0;
  double lo = 0, hi = 1;
  std::vector<double> values;
  double coord(int i) const { return lo + (hi - lo) * i / (grid_n - 1); }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid_n + j]; }
};

GridValues eval_grid(const TracedFunction& fn, int grid_n);
GridValues eval_grid(const Mode& mode, int order_a, int order_e, int grid_n);

constexpr double kCurveTolerance = 1e-9;
constexpr double kIntersectionTolerance = 1e-12;

struct ZeroCurve {
  Mode mode;
  int order_a = 0, order_e = 0;
  std::vector<Point> points;
  bool closed = false;
};

struct TraceResult {
  std::vector<ZeroCurve> curves;
  /// Cells with four crossings, resolved by the sign at the cell centre.
  int saddle_cells = 0;
  /// Edge crossings where bisection stopped above the curve tolerance.
  int unconverged = 0;
  /// Largest normalized residual among stored points.
  double max_residual = 0;
};

TraceResult trace_curves(const TracedFunction& fn, int order_a, int order_e, int grid_n);
TraceResult trace_curves(const Mode& mode, int order_a, int order_e, int grid_n);

struct IntersectionReport {
  Mode mode;
  Point point;
  /// Normalized residuals of the functions involved (two or three).
  std::vector<double> residuals;
  int newton_iterations = 0;
  /// Harmonic multiples j of the mode whose zero curves meet here.
  std::vector<int> harmonics;
};

struct TriangleReport {
  Mode mode;
  /// Vertices from the pairs (1,2), (1,3), (2,3).
  std::array<Point, 3> vertices{};
  double area = 0;
  Point incenter;
  double inradius = 0;
  double perimeter = 0;
  int order_a = 0, order_e = 0;
};

TriangleReport triangle_metrics(const std::array<Point, 3>& v);

struct NewtonStats {
  int seeds = 0;
  int diverged = 0;
  int off_curve = 0;
};

/// Common zeros of two traced functions from zero curves already traced.
std::vector<IntersectionReport> intersect_curves(const TracedFunction& f1, const TraceResult& c1, int j1,
                                                 const TracedFunction& f2, const TraceResult& c2, int j2,
                                                 int grid_n, NewtonStats* stats = nullptr);

/// D_{m,k}: common zeros of f_{m,k} and f_{2m,2k}.
std::vector<IntersectionReport> find_double(const Mode& mode, int order_a, int order_e, int grid_n);

struct TripleResult {
  /// Pairwise intersections (1,2), (1,3), (2,3).
  std::array<std::vector<IntersectionReport>, 3> pairs;
  /// Mutually nearest vertex triples, sorted by perimeter.
  std::vector<TriangleReport> triangles;
  /// Points where a Gauss-Newton solve of all three equations converged.
  std::vector<IntersectionReport> triple_zeros;
  /// Smallest-perimeter triangle, or nullptr.
  const TriangleReport* primary() const { return triangles.empty() ? nullptr : &triangles.front(); }
};

TripleResult find_triple(const Mode& mode, int order_a, int order_e, int grid_n);

enum class AtlasTask { Curves, Double, Triple };
AtlasTask parse_task(const std::string& name);
std::string task_name(AtlasTask task);

struct AtlasOptions {
  AtlasTask task = AtlasTask::Curves;
  int order_a = 60, order_e = 60;
  int mode_bound = 12;
  int grid_n = 512;
  /// 0: PCR3BP_THREADS, else hardware concurrency.
  int threads = 0;
  double area_threshold = 1e-3;
  /// When non-empty, scan these modes instead of enumerating.
  std::vector<Mode> modes;
};

struct ModeAtlas {
  Mode mode;
  /// Curves of f_{jm,jk}, index j-1.
  std::vector<TraceResult> layers;
  std::vector<IntersectionReport> doubles;
  TripleResult triple;
  bool skipped = false;
  std::string note;
};

struct AtlasReport {
  AtlasOptions options;
  std::vector<ModeAtlas> modes;
  int curve_count = 0;
  int double_count = 0;
  int triple_zero_count = 0;
  /// min sqrt(a^2 + e^2) over double points; negative when there are none.
  double min_distance = -1;
};

/// Modes (m,k) in G2 with |m| + |k| <= bound, m >= 0, visible for `harmonics`
/// multiples: j m* <= N_a and j |m - k| <= N_e.
std::vector<Mode> enumerate_modes(int bound, int harmonics, int order_a, int order_e);

int thread_count(int requested);

AtlasReport scan_modes(const AtlasOptions& options);

// exports
std::string curves_csv(const AtlasReport& report);
std::string atlas_json(const AtlasReport& report);
std::string atlas_svg(const AtlasReport& report, bool min_distance_circle = true);

}  // namespace pcr3bp
