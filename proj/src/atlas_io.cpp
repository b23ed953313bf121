#include "pcr3bp/version.hpp"
#include "pcr3bp/zero_atlas.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace pcr3bp {

namespace {

using nlohmann::ordered_json;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

ordered_json point_json(const Point& p) { return ordered_json::array({p.a, p.e}); }

ordered_json mode_json(const Mode& m) { return ordered_json::array({m.m, m.k}); }

ordered_json intersection_json(const IntersectionReport& r) {
  ordered_json j;
  j["mode"] = mode_json(r.mode);
  j["harmonics"] = r.harmonics;
  j["point"] = point_json(r.point);
  j["residuals"] = r.residuals;
  j["newton_iterations"] = r.newton_iterations;
  return j;
}

ordered_json triangle_json(const TriangleReport& t) {
  ordered_json j;
  j["mode"] = mode_json(t.mode);
  j["order"] = ordered_json::array({t.order_a, t.order_e});
  ordered_json v = ordered_json::array();
  for (const Point& p : t.vertices) v.push_back(point_json(p));
  j["vertices"] = v;
  j["area"] = t.area;
  j["perimeter"] = t.perimeter;
  j["incenter"] = point_json(t.incenter);
  j["inradius"] = t.inradius;
  return j;
}

std::string svg_x(double a) { return fmt("%.3f", a * 800); }
std::string svg_y(double e) { return fmt("%.3f", (1 - e) * 800); }

const char* layer_color(int j) {
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c"};
  return colors[(j - 1) % 3];
}

// pairs (1,2), (1,3), (2,3)
const char* pair_color(int p) {
  static const char* colors[] = {"#d62728", "#2ca02c", "#1f77b4"};
  return colors[p];
}

}  // namespace

std::string curves_csv(const AtlasReport& report) {
  std::ostringstream out;
  bool first = true;
  for (const ModeAtlas& ma : report.modes) {
    for (std::size_t layer = 0; layer < ma.layers.size(); ++layer) {
      const int j = static_cast<int>(layer) + 1;
      const Mode mode = ma.mode.scaled(j);
      int index = 0;
      for (const ZeroCurve& c : ma.layers[layer].curves) {
        if (!first) out << '\n';
        first = false;
        out << "# mode " << mode.m << ',' << mode.k << " j " << j << " order " << c.order_a << ',' << c.order_e
            << " curve " << index++ << (c.closed ? " closed" : " open") << '\n';
        out << "a,e\n";
        for (const Point& p : c.points) out << fmt("%.15g", p.a) << ',' << fmt("%.15g", p.e) << '\n';
      }
    }
  }
  return out.str();
}

std::string atlas_json(const AtlasReport& report) {
  const AtlasOptions& o = report.options;
  ordered_json j;
  j["task"] = task_name(o.task);
  j["order"] = ordered_json::array({o.order_a, o.order_e});
  j["mode_bound"] = o.mode_bound;
  j["grid_n"] = o.grid_n;
  j["area_threshold"] = o.area_threshold;
  j["curve_count"] = report.curve_count;
  j["double_count"] = report.double_count;
  j["triple_zero_count"] = report.triple_zero_count;
  if (report.min_distance >= 0)
    j["min_distance"] = report.min_distance;
  else
    j["min_distance"] = nullptr;

  ordered_json modes = ordered_json::array();
  for (const ModeAtlas& ma : report.modes) {
    ordered_json m;
    m["mode"] = mode_json(ma.mode);
    m["skipped"] = ma.skipped;
    if (!ma.note.empty()) m["note"] = ma.note;
    ordered_json layers = ordered_json::array();
    for (std::size_t i = 0; i < ma.layers.size(); ++i) {
      const TraceResult& t = ma.layers[i];
      ordered_json l;
      l["j"] = static_cast<int>(i) + 1;
      l["curves"] = t.curves.size();
      std::size_t points = 0;
      for (const ZeroCurve& c : t.curves) points += c.points.size();
      l["points"] = points;
      l["saddle_cells"] = t.saddle_cells;
      l["unconverged"] = t.unconverged;
      l["max_residual"] = t.max_residual;
      layers.push_back(l);
    }
    m["layers"] = layers;
    ordered_json doubles = ordered_json::array();
    for (const auto& d : ma.doubles) doubles.push_back(intersection_json(d));
    m["doubles"] = doubles;
    if (o.task == AtlasTask::Triple && !ma.skipped) {
      ordered_json pairs = ordered_json::array();
      for (const auto& set : ma.triple.pairs) {
        ordered_json s = ordered_json::array();
        for (const auto& r : set) s.push_back(intersection_json(r));
        pairs.push_back(s);
      }
      m["pairs"] = pairs;
      ordered_json tris = ordered_json::array();
      for (const auto& t : ma.triple.triangles)
        if (t.area < o.area_threshold || &t == ma.triple.primary()) tris.push_back(triangle_json(t));
      m["triangles"] = tris;
      ordered_json zeros = ordered_json::array();
      for (const auto& z : ma.triple.triple_zeros) zeros.push_back(intersection_json(z));
      m["triple_zeros"] = zeros;
    }
    modes.push_back(m);
  }
  j["modes"] = modes;
  return j.dump(1) + "\n";
}

std::string atlas_svg(const AtlasReport& report, bool min_distance_circle) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  out << "<!-- pcr3bp " << kVersion << " -->\n";
  out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\" stroke=\"black\"/>\n";
  for (const ModeAtlas& ma : report.modes) {
    for (std::size_t layer = 0; layer < ma.layers.size(); ++layer) {
      const int j = static_cast<int>(layer) + 1;
      for (const ZeroCurve& c : ma.layers[layer].curves) {
        if (c.points.size() < 2) continue;
        out << (c.closed ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\"" << layer_color(j)
            << "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < c.points.size(); ++i)
          out << (i ? " " : "") << svg_x(c.points[i].a) << ',' << svg_y(c.points[i].e);
        out << "\"/>\n";
      }
    }
  }
  for (const ModeAtlas& ma : report.modes) {
    if (report.options.task == AtlasTask::Triple) {
      for (int p = 0; p < 3; ++p)
        for (const auto& r : ma.triple.pairs[p])
          out << "<circle cx=\"" << svg_x(r.point.a) << "\" cy=\"" << svg_y(r.point.e) << "\" r=\"3\" fill=\""
              << pair_color(p) << "\"/>\n";
    } else {
      for (const auto& d : ma.doubles)
        out << "<circle cx=\"" << svg_x(d.point.a) << "\" cy=\"" << svg_y(d.point.e)
            << "\" r=\"3\" fill=\"#d62728\"/>\n";
    }
  }
  if (min_distance_circle && report.min_distance > 0) {
    const std::string r = fmt("%.3f", report.min_distance * 800);
    out << "<path d=\"M " << r << " 800 A " << r << ' ' << r << " 0 0 0 0 " << fmt("%.3f", 800 - report.min_distance * 800)
        << "\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace pcr3bp
