#include "pcr3bp/zero_atlas.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace pcr3bp {

// ---------------------------------------------------------------------------
// normalized polynomial

TracedFunction::TracedFunction(const Mode& mode, int order_a, int order_e) : mode_(mode) {
  const SeriesAE f = fourier_coefficient(mode, order_a, order_e);
  if (f.is_zero()) {
    zero_ = true;
    c_ = ca_ = ce_ = {0.0L};
    return;
  }
  const bool zero_mode = mode.m == 0 && mode.k == 0;
  int n0 = zero_mode ? 0 : mode.m_star;
  int q0 = zero_mode ? 0 : std::abs(mode.m - mode.k);
  for (const auto& [key, c] : f.terms()) {
    n0 = std::min(n0, key.first);
    q0 = std::min(q0, key.second);
  }
  Rational scale(1);
  if (!zero_mode) {
    const Rational t = t_mk(mode).t_value;
    if (t.is_zero())
      degenerate_ = true;
    else
      scale = Rational(2) * abs(t);
  }
  na_ = order_a - n0;
  ne_ = order_e - q0;
  SeriesAE g(na_, ne_);
  for (const auto& [key, c] : f.terms()) g.add_term(key.first - n0, key.second - q0, c / scale);
  const SeriesAE ga = g.derivative_a(), ge = g.derivative_e();

  const std::size_t width = static_cast<std::size_t>(ne_ + 1);
  const std::size_t size = static_cast<std::size_t>(na_ + 1) * width;
  c_.assign(size, 0.0L);
  ca_.assign(size, 0.0L);
  ce_.assign(size, 0.0L);
  for (const auto& [key, c] : g.terms()) c_[key.first * width + key.second] = c.to_long_double();
  for (const auto& [key, c] : ga.terms()) ca_[key.first * width + key.second] = c.to_long_double();
  for (const auto& [key, c] : ge.terms()) ce_[key.first * width + key.second] = c.to_long_double();
}

namespace {

long double horner_rows(const std::vector<long double>& c, int na, int ne, long double a, long double e) {
  const std::size_t width = static_cast<std::size_t>(ne + 1);
  long double acc = 0;
  for (int n = na; n >= 0; --n) {
    const long double* row = &c[n * width];
    long double r = 0;
    for (int q = ne; q >= 0; --q) r = r * e + row[q];
    acc = acc * a + r;
  }
  return acc;
}

long double horner(const std::vector<long double>& p, long double x) {
  long double acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

long double TracedFunction::value(long double a, long double e) const {
  if (zero_) return 0;
  return horner_rows(c_, na_, ne_, a, e);
}

void TracedFunction::value_grad(long double a, long double e, long double& v, long double& va,
                                long double& ve) const {
  if (zero_) {
    v = va = ve = 0;
    return;
  }
  v = horner_rows(c_, na_, ne_, a, e);
  va = horner_rows(ca_, na_, ne_, a, e);
  ve = horner_rows(ce_, na_, ne_, a, e);
}

std::vector<long double> TracedFunction::rows_at(long double e) const {
  if (zero_) return {0.0L};
  const std::size_t width = static_cast<std::size_t>(ne_ + 1);
  std::vector<long double> rows(static_cast<std::size_t>(na_ + 1));
  for (int n = 0; n <= na_; ++n) {
    long double r = 0;
    for (int q = ne_; q >= 0; --q) r = r * e + c_[n * width + q];
    rows[n] = r;
  }
  return rows;
}

std::vector<long double> TracedFunction::columns_at(long double a) const {
  if (zero_) return {0.0L};
  const std::size_t width = static_cast<std::size_t>(ne_ + 1);
  std::vector<long double> cols(width, 0.0L);
  for (int n = na_; n >= 0; --n)
    for (int q = 0; q <= ne_; ++q) cols[q] = cols[q] * a + c_[n * width + q];
  return cols;
}

// ---------------------------------------------------------------------------
// grid and marching squares

GridValues eval_grid(const TracedFunction& fn, int grid_n) {
  if (grid_n < 16) throw DomainError("grid resolution must be at least 16");
  GridValues g;
  g.grid_n = grid_n;
  g.lo = 1.0 / grid_n;
  g.hi = 1.0 - g.lo;
  g.values.assign(static_cast<std::size_t>(grid_n) * grid_n, 0.0);
  for (int j = 0; j < grid_n; ++j) {
    const std::vector<long double> rows = fn.rows_at(g.coord(j));
    for (int i = 0; i < grid_n; ++i)
      g.values[static_cast<std::size_t>(i) * grid_n + j] = static_cast<double>(horner(rows, g.coord(i)));
  }
  return g;
}

GridValues eval_grid(const Mode& mode, int order_a, int order_e, int grid_n) {
  return eval_grid(TracedFunction(mode, order_a, order_e), grid_n);
}

namespace {

// Bisection on [x0, x1] for a univariate polynomial with values of opposite sign.
long double bisect(const std::vector<long double>& p, long double x0, long double x1) {
  long double v0 = horner(p, x0);
  for (int it = 0; it < 200; ++it) {
    const long double mid = 0.5L * (x0 + x1);
    if (mid == x0 || mid == x1) break;
    const long double v = horner(p, mid);
    if (v == 0) return mid;
    if (std::abs(v) <= 1e-3 * kCurveTolerance && x1 - x0 < 1e-12L) return mid;
    if ((v > 0) == (v0 > 0)) {
      x0 = mid;
      v0 = v;
    } else {
      x1 = mid;
    }
  }
  return 0.5L * (x0 + x1);
}

}  // namespace

TraceResult trace_curves(const TracedFunction& fn, int order_a, int order_e, int grid_n) {
  TraceResult out;
  if (fn.is_zero()) return out;
  const GridValues g = eval_grid(fn, grid_n);
  const int n = grid_n;

  std::vector<std::vector<long double>> rows(static_cast<std::size_t>(n)), cols(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) rows[j] = fn.rows_at(g.coord(j));
  for (int i = 0; i < n; ++i) cols[i] = fn.columns_at(g.coord(i));

  std::vector<Point> pts;
  auto positive = [&](int i, int j) { return g.at(i, j) > 0; };
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  std::vector<int> h_idx(cells, -1), v_idx(cells, -1);

  auto add_point = [&](double a, double e) {
    const double r = static_cast<double>(std::abs(fn.value(a, e)));
    if (!(r <= kCurveTolerance)) ++out.unconverged;
    out.max_residual = std::max(out.max_residual, r);
    pts.push_back({a, e});
    return static_cast<int>(pts.size()) - 1;
  };
  // edge (i,j)-(i+1,j): e fixed
  auto h_point = [&](int i, int j) {
    int& slot = h_idx[static_cast<std::size_t>(i) * n + j];
    if (slot < 0) slot = add_point(static_cast<double>(bisect(rows[j], g.coord(i), g.coord(i + 1))), g.coord(j));
    return slot;
  };
  // edge (i,j)-(i,j+1): a fixed
  auto v_point = [&](int i, int j) {
    int& slot = v_idx[static_cast<std::size_t>(i) * n + j];
    if (slot < 0) slot = add_point(g.coord(i), static_cast<double>(bisect(cols[i], g.coord(j), g.coord(j + 1))));
    return slot;
  };

  std::vector<std::pair<int, int>> segments;
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j + 1 < n; ++j) {
      const bool s0 = positive(i, j), s1 = positive(i + 1, j), s2 = positive(i + 1, j + 1), s3 = positive(i, j + 1);
      if (s0 == s1 && s1 == s2 && s2 == s3) continue;
      // edges: 0 bottom (c0-c1), 1 right (c1-c2), 2 top (c3-c2), 3 left (c0-c3)
      auto edge = [&](int which) {
        switch (which) {
          case 0: return h_point(i, j);
          case 1: return v_point(i + 1, j);
          case 2: return h_point(i, j + 1);
          default: return v_point(i, j);
        }
      };
      std::vector<int> crossing;
      if (s0 != s1) crossing.push_back(0);
      if (s1 != s2) crossing.push_back(1);
      if (s3 != s2) crossing.push_back(2);
      if (s0 != s3) crossing.push_back(3);
      if (crossing.size() == 2) {
        segments.emplace_back(edge(crossing[0]), edge(crossing[1]));
        continue;
      }
      ++out.saddle_cells;
      const double ac = 0.5 * (g.coord(i) + g.coord(i + 1)), ec = 0.5 * (g.coord(j) + g.coord(j + 1));
      const bool centre = fn.value(ac, ec) > 0;
      if (centre == s0) {
        segments.emplace_back(edge(0), edge(1));
        segments.emplace_back(edge(2), edge(3));
      } else {
        segments.emplace_back(edge(0), edge(3));
        segments.emplace_back(edge(1), edge(2));
      }
    }

  // chain segments; every crossing has at most two neighbours
  std::vector<std::array<int, 2>> nbr(pts.size(), {-1, -1});
  for (const auto& [p, q] : segments) {
    (nbr[p][0] < 0 ? nbr[p][0] : nbr[p][1]) = q;
    (nbr[q][0] < 0 ? nbr[q][0] : nbr[q][1]) = p;
  }
  std::vector<char> used(pts.size(), 0);
  auto walk = [&](int start, bool closed) {
    ZeroCurve c;
    c.mode = fn.mode();
    c.order_a = order_a;
    c.order_e = order_e;
    c.closed = closed;
    int prev = -1, cur = start;
    while (cur >= 0 && !used[cur]) {
      used[cur] = 1;
      c.points.push_back(pts[cur]);
      const int next = nbr[cur][0] != prev ? nbr[cur][0] : nbr[cur][1];
      prev = cur;
      cur = next;
    }
    if (closed) c.points.push_back(pts[start]);
    out.curves.push_back(std::move(c));
  };
  for (std::size_t p = 0; p < pts.size(); ++p)
    if (!used[p] && nbr[p][1] < 0) walk(static_cast<int>(p), false);
  for (std::size_t p = 0; p < pts.size(); ++p)
    if (!used[p]) walk(static_cast<int>(p), true);
  return out;
}

TraceResult trace_curves(const Mode& mode, int order_a, int order_e, int grid_n) {
  return trace_curves(TracedFunction(mode, order_a, order_e), order_a, order_e, grid_n);
}

// ---------------------------------------------------------------------------
// intersections

namespace {

struct Segment {
  Point p, q;
};

std::vector<Segment> segments_of(const TraceResult& t) {
  std::vector<Segment> out;
  for (const auto& c : t.curves)
    for (std::size_t i = 0; i + 1 < c.points.size(); ++i) out.push_back({c.points[i], c.points[i + 1]});
  return out;
}

double dist(const Point& x, const Point& y) { return std::hypot(x.a - y.a, x.e - y.e); }

Point closest_on_segment(const Point& x, const Segment& s) {
  const double da = s.q.a - s.p.a, de = s.q.e - s.p.e;
  const double len2 = da * da + de * de;
  double t = len2 > 0 ? ((x.a - s.p.a) * da + (x.e - s.p.e) * de) / len2 : 0;
  t = std::clamp(t, 0.0, 1.0);
  return {s.p.a + t * da, s.p.e + t * de};
}

// Closest pair of points between two segments.
std::pair<Point, Point> closest_pair(const Segment& s, const Segment& t) {
  // proper intersection first
  const double d1a = s.q.a - s.p.a, d1e = s.q.e - s.p.e, d2a = t.q.a - t.p.a, d2e = t.q.e - t.p.e;
  const double den = d1a * d2e - d1e * d2a;
  if (den != 0) {
    const double u = ((t.p.a - s.p.a) * d2e - (t.p.e - s.p.e) * d2a) / den;
    const double v = ((t.p.a - s.p.a) * d1e - (t.p.e - s.p.e) * d1a) / den;
    if (u >= 0 && u <= 1 && v >= 0 && v <= 1) {
      Point x{s.p.a + u * d1a, s.p.e + u * d1e};
      return {x, x};
    }
  }
  std::pair<Point, Point> best{s.p, closest_on_segment(s.p, t)};
  auto consider = [&](const Point& x, const Point& y) {
    if (dist(x, y) < dist(best.first, best.second)) best = {x, y};
  };
  consider(s.q, closest_on_segment(s.q, t));
  consider(closest_on_segment(t.p, s), t.p);
  consider(closest_on_segment(t.q, s), t.q);
  return best;
}

class SegmentIndex {
 public:
  SegmentIndex(const std::vector<Segment>& segs, double cell) : segs_(segs), cell_(cell) {
    side_ = static_cast<int>(std::ceil(1.0 / cell)) + 1;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto [a0, a1, e0, e1] = bounds(segs[i], 0);
      for (int x = a0; x <= a1; ++x)
        for (int y = e0; y <= e1; ++y) buckets_[key(x, y)].push_back(static_cast<int>(i));
    }
  }

  /// Indices of segments whose buckets meet the box around s grown by r.
  std::vector<int> near(const Segment& s, double r) const {
    std::vector<int> out;
    const auto [a0, a1, e0, e1] = bounds(s, r);
    for (int x = a0; x <= a1; ++x)
      for (int y = e0; y <= e1; ++y) {
        auto it = buckets_.find(key(x, y));
        if (it == buckets_.end()) continue;
        out.insert(out.end(), it->second.begin(), it->second.end());
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  double distance(const Point& x, double r) const {
    double best = std::numeric_limits<double>::infinity();
    for (int i : near({x, x}, r)) best = std::min(best, dist(x, closest_on_segment(x, segs_[i])));
    return best;
  }

 private:
  std::array<int, 4> bounds(const Segment& s, double r) const {
    auto cellof = [&](double v) { return std::clamp(static_cast<int>(std::floor(v / cell_)), 0, side_ - 1); };
    return {cellof(std::min(s.p.a, s.q.a) - r), cellof(std::max(s.p.a, s.q.a) + r),
            cellof(std::min(s.p.e, s.q.e) - r), cellof(std::max(s.p.e, s.q.e) + r)};
  }
  long key(int x, int y) const { return static_cast<long>(x) * side_ + y; }

  const std::vector<Segment>& segs_;
  double cell_;
  int side_;
  std::unordered_map<long, std::vector<int>> buckets_;
};

bool inside(long double a, long double e) { return a > 0 && a < 1 && e > 0 && e < 1; }

// Damped Newton on (f1, f2) = 0; the step is halved until the residual drops.
bool newton2(const TracedFunction& f1, const TracedFunction& f2, Point& p, int& iterations) {
  long double a = p.a, e = p.e;
  long double v1, v1a, v1e, v2, v2a, v2e;
  f1.value_grad(a, e, v1, v1a, v1e);
  f2.value_grad(a, e, v2, v2a, v2e);
  long double res = std::max(std::abs(v1), std::abs(v2));
  iterations = 0;
  for (int it = 0; it < 50 && res > 1e-14L; ++it) {
    ++iterations;
    const long double det = v1a * v2e - v1e * v2a;
    if (det == 0 || !std::isfinite(static_cast<double>(det))) return false;
    const long double da = (-v1 * v2e + v2 * v1e) / det;
    const long double de = (-v2 * v1a + v1 * v2a) / det;
    long double lambda = 1;
    bool moved = false;
    for (int half = 0; half < 30; ++half, lambda *= 0.5L) {
      const long double ta = a + lambda * da, te = e + lambda * de;
      if (!inside(ta, te)) continue;
      long double w1, w1a, w1e, w2, w2a, w2e;
      f1.value_grad(ta, te, w1, w1a, w1e);
      f2.value_grad(ta, te, w2, w2a, w2e);
      const long double r = std::max(std::abs(w1), std::abs(w2));
      if (r < res) {
        a = ta, e = te;
        v1 = w1, v1a = w1a, v1e = w1e, v2 = w2, v2a = w2a, v2e = w2e;
        res = r;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  p = {static_cast<double>(a), static_cast<double>(e)};
  if (!inside(p.a, p.e)) return false;
  return std::abs(f1.value(p.a, p.e)) <= kIntersectionTolerance &&
         std::abs(f2.value(p.a, p.e)) <= kIntersectionTolerance;
}

}  // namespace

std::vector<IntersectionReport> intersect_curves(const TracedFunction& f1, const TraceResult& c1, int j1,
                                                 const TracedFunction& f2, const TraceResult& c2, int j2,
                                                 int grid_n, NewtonStats* stats) {
  std::vector<IntersectionReport> out;
  NewtonStats local;
  NewtonStats& st = stats ? *stats : local;
  const double reach = 2.0 / grid_n;
  const std::vector<Segment> s1 = segments_of(c1), s2 = segments_of(c2);
  if (s1.empty() || s2.empty()) return out;
  const SegmentIndex idx1(s1, reach), idx2(s2, reach);

  // seeds: crossings and near misses, thinned to one per reach-sized cluster
  std::vector<std::pair<double, Point>> seeds;
  for (const auto& s : s1)
    for (int i : idx2.near(s, reach)) {
      const auto [x, y] = closest_pair(s, s2[i]);
      const double d = dist(x, y);
      if (d < reach) seeds.push_back({d, {0.5 * (x.a + y.a), 0.5 * (x.e + y.e)}});
    }
  std::stable_sort(seeds.begin(), seeds.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Point> kept;
  for (const auto& [d, p] : seeds) {
    bool close = false;
    for (const auto& q : kept)
      if (dist(p, q) < reach) {
        close = true;
        break;
      }
    if (!close) kept.push_back(p);
  }

  for (Point p : kept) {
    ++st.seeds;
    int iterations = 0;
    if (!newton2(f1, f2, p, iterations)) {
      ++st.diverged;
      continue;
    }
    bool dup = false;
    for (const auto& r : out)
      if (dist(r.point, p) < 1e-6) dup = true;
    if (dup) continue;
    if (idx1.distance(p, reach) > reach || idx2.distance(p, reach) > reach) {
      ++st.off_curve;
      continue;
    }
    IntersectionReport r;
    r.mode = f1.mode();
    r.point = p;
    r.residuals = {static_cast<double>(std::abs(f1.value(p.a, p.e))),
                   static_cast<double>(std::abs(f2.value(p.a, p.e)))};
    r.newton_iterations = iterations;
    r.harmonics = {j1, j2};
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.point.a != y.point.a ? x.point.a < y.point.a : x.point.e < y.point.e;
  });
  return out;
}

std::vector<IntersectionReport> find_double(const Mode& mode, int order_a, int order_e, int grid_n) {
  const TracedFunction f1(mode, order_a, order_e), f2(mode.scaled(2), order_a, order_e);
  const TraceResult c1 = trace_curves(f1, order_a, order_e, grid_n);
  const TraceResult c2 = trace_curves(f2, order_a, order_e, grid_n);
  return intersect_curves(f1, c1, 1, f2, c2, 2, grid_n);
}

TriangleReport triangle_metrics(const std::array<Point, 3>& v) {
  TriangleReport t;
  t.vertices = v;
  const double cross = (v[1].a - v[0].a) * (v[2].e - v[0].e) - (v[2].a - v[0].a) * (v[1].e - v[0].e);
  t.area = 0.5 * std::abs(cross);
  const double la = dist(v[1], v[2]), lb = dist(v[2], v[0]), lc = dist(v[0], v[1]);
  t.perimeter = la + lb + lc;
  if (t.perimeter == 0) {
    t.incenter = v[0];
    return t;
  }
  t.incenter = {(la * v[0].a + lb * v[1].a + lc * v[2].a) / t.perimeter,
                (la * v[0].e + lb * v[1].e + lc * v[2].e) / t.perimeter};
  t.inradius = t.area / (0.5 * t.perimeter);
  return t;
}

namespace {

int nearest(const Point& x, const std::vector<IntersectionReport>& set) {
  int best = -1;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < set.size(); ++i) {
    const double d = dist(x, set[i].point);
    if (d < bd) bd = d, best = static_cast<int>(i);
  }
  return best;
}

// Gauss-Newton on the overdetermined system f1 = f2 = f3 = 0.
bool gauss_newton3(const std::array<const TracedFunction*, 3>& f, Point& p, int& iterations,
                   std::vector<double>& residuals) {
  long double a = p.a, e = p.e;
  iterations = 0;
  for (int it = 0; it < 50; ++it) {
    ++iterations;
    long double v[3], ga[3], ge[3];
    for (int i = 0; i < 3; ++i) f[i]->value_grad(a, e, v[i], ga[i], ge[i]);
    long double saa = 0, sae = 0, see = 0, ra = 0, re = 0;
    for (int i = 0; i < 3; ++i) {
      saa += ga[i] * ga[i];
      sae += ga[i] * ge[i];
      see += ge[i] * ge[i];
      ra += ga[i] * v[i];
      re += ge[i] * v[i];
    }
    const long double det = saa * see - sae * sae;
    if (det == 0 || !std::isfinite(static_cast<double>(det))) break;
    const long double da = -(see * ra - sae * re) / det, de = -(saa * re - sae * ra) / det;
    a += 0.5L * da;
    e += 0.5L * de;
    if (!inside(a, e)) return false;
    if (std::abs(da) + std::abs(de) < 1e-18L) break;
  }
  p = {static_cast<double>(a), static_cast<double>(e)};
  residuals.clear();
  bool ok = true;
  for (int i = 0; i < 3; ++i) {
    const double r = static_cast<double>(std::abs(f[i]->value(p.a, p.e)));
    residuals.push_back(r);
    ok = ok && r <= kIntersectionTolerance;
  }
  return ok;
}

}  // namespace

namespace {

TripleResult triple_from_traces(const std::array<const TracedFunction*, 3>& fs,
                                const std::array<const TraceResult*, 3>& cs, int order_a, int order_e,
                                int grid_n) {
  const Mode mode = fs[0]->mode();
  TripleResult out;
  out.pairs[0] = intersect_curves(*fs[0], *cs[0], 1, *fs[1], *cs[1], 2, grid_n);
  out.pairs[1] = intersect_curves(*fs[0], *cs[0], 1, *fs[2], *cs[2], 3, grid_n);
  out.pairs[2] = intersect_curves(*fs[1], *cs[1], 2, *fs[2], *cs[2], 3, grid_n);
  const auto& P = out.pairs;

  for (std::size_t x = 0; x < P[0].size(); ++x) {
    const int y = nearest(P[0][x].point, P[1]);
    const int z = nearest(P[0][x].point, P[2]);
    if (y < 0 || z < 0) continue;
    // mutual nearest along all three pairs
    if (nearest(P[1][y].point, P[0]) != static_cast<int>(x)) continue;
    if (nearest(P[2][z].point, P[0]) != static_cast<int>(x)) continue;
    if (nearest(P[1][y].point, P[2]) != z || nearest(P[2][z].point, P[1]) != y) continue;
    TriangleReport t = triangle_metrics({P[0][x].point, P[1][y].point, P[2][z].point});
    t.mode = mode;
    t.order_a = order_a;
    t.order_e = order_e;
    out.triangles.push_back(t);
  }
  std::stable_sort(out.triangles.begin(), out.triangles.end(),
                   [](const auto& s, const auto& t) { return s.perimeter < t.perimeter; });

  for (const auto& t : out.triangles) {
    Point p = t.incenter;
    IntersectionReport r;
    if (!gauss_newton3(fs, p, r.newton_iterations, r.residuals)) continue;
    bool dup = false;
    for (const auto& s : out.triple_zeros)
      if (dist(s.point, p) < 1e-6) dup = true;
    if (dup) continue;
    r.mode = mode;
    r.point = p;
    r.harmonics = {1, 2, 3};
    out.triple_zeros.push_back(std::move(r));
  }
  return out;
}

}  // namespace

TripleResult find_triple(const Mode& mode, int order_a, int order_e, int grid_n) {
  const TracedFunction f1(mode, order_a, order_e), f2(mode.scaled(2), order_a, order_e),
      f3(mode.scaled(3), order_a, order_e);
  const TraceResult c1 = trace_curves(f1, order_a, order_e, grid_n);
  const TraceResult c2 = trace_curves(f2, order_a, order_e, grid_n);
  const TraceResult c3 = trace_curves(f3, order_a, order_e, grid_n);
  return triple_from_traces({&f1, &f2, &f3}, {&c1, &c2, &c3}, order_a, order_e, grid_n);
}

// ---------------------------------------------------------------------------
// scans

AtlasTask parse_task(const std::string& name) {
  if (name == "curves") return AtlasTask::Curves;
  if (name == "double") return AtlasTask::Double;
  if (name == "triple") return AtlasTask::Triple;
  throw DomainError("unknown task '" + name + "' (curves, double, triple)");
}

std::string task_name(AtlasTask task) {
  switch (task) {
    case AtlasTask::Curves: return "curves";
    case AtlasTask::Double: return "double";
    case AtlasTask::Triple: return "triple";
  }
  return "?";
}

std::vector<Mode> enumerate_modes(int bound, int harmonics, int order_a, int order_e) {
  std::vector<Mode> out;
  for (int m = 0; m <= bound; ++m)
    for (int k = -(bound - m); k <= bound - m; ++k) {
      const Mode mode = Mode::of(m, k);
      if (!mode.in_G2) continue;
      if (harmonics * mode.m_star > order_a || harmonics * std::abs(m - k) > order_e) continue;
      out.push_back(mode);
    }
  return out;
}

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PCR3BP_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

AtlasReport scan_modes(const AtlasOptions& options) {
  AtlasReport report;
  report.options = options;
  const int harmonics = options.task == AtlasTask::Curves ? 1 : (options.task == AtlasTask::Double ? 2 : 3);
  const int Na = options.order_a, Ne = options.order_e, grid = options.grid_n;
  if (grid < 16) throw DomainError("grid resolution must be at least 16");

  std::vector<Mode> modes = options.modes;
  if (modes.empty()) modes = enumerate_modes(options.mode_bound, harmonics, Na, Ne);
  report.modes.resize(modes.size());

  auto job = [&](std::size_t idx) {
    ModeAtlas& out = report.modes[idx];
    out.mode = modes[idx];
    if (out.mode.m < 0) {
      out.skipped = true;
      out.note = "m < 0 is outside the G2 convention";
      return;
    }
    if (harmonics * out.mode.m_star > Na || harmonics * std::abs(out.mode.m - out.mode.k) > Ne) {
      out.skipped = true;
      out.note = "not visible at this truncation order";
      return;
    }
    try {
      std::vector<TracedFunction> fs;
      for (int j = 1; j <= harmonics; ++j) fs.emplace_back(out.mode.scaled(j), Na, Ne);
      for (int j = 0; j < harmonics; ++j) out.layers.push_back(trace_curves(fs[j], Na, Ne, grid));
      if (harmonics == 2) out.doubles = intersect_curves(fs[0], out.layers[0], 1, fs[1], out.layers[1], 2, grid);
      if (harmonics == 3) {
        out.triple = triple_from_traces({&fs[0], &fs[1], &fs[2]}, {&out.layers[0], &out.layers[1], &out.layers[2]},
                                        Na, Ne, grid);
        out.doubles = out.triple.pairs[0];
      }
    } catch (const std::exception& ex) {
      out = ModeAtlas{};
      out.mode = modes[idx];
      out.skipped = true;
      out.note = ex.what();
    }
  };

  const int threads = std::min<int>(thread_count(options.threads), std::max<std::size_t>(1, modes.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < modes.size(); i = next++) job(i);
    });
  for (auto& th : pool) th.join();

  for (const auto& ma : report.modes) {
    if (!ma.layers.empty()) report.curve_count += static_cast<int>(ma.layers[0].curves.size());
    report.double_count += static_cast<int>(ma.doubles.size());
    report.triple_zero_count += static_cast<int>(ma.triple.triple_zeros.size());
    for (const auto& d : ma.doubles) {
      const double r = std::hypot(d.point.a, d.point.e);
      if (report.min_distance < 0 || r < report.min_distance) report.min_distance = r;
    }
  }
  return report;
}

}  // namespace pcr3bp
