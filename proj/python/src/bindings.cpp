#include "pcr3bp/fourier.hpp"
#include "pcr3bp/hansen.hpp"
#include "pcr3bp/oracle.hpp"
#include "pcr3bp/version.hpp"
#include "pcr3bp/zero_atlas.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pcr3bp;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(r.fraction());
}

// {power: Fraction}
py::dict series_dict(const SeriesE& s) {
  py::dict d;
  for (const auto& [q, c] : s.terms()) d[py::int_(q)] = fraction(c);
  return d;
}

// {(n, q): Fraction}
py::dict series_dict(const SeriesAE& s) {
  py::dict d;
  for (const auto& [key, c] : s.terms()) d[py::make_tuple(key.first, key.second)] = fraction(c);
  return d;
}

AtlasReport run_scan(const std::string& task, int order_a, int order_e, int mode_bound, int grid_n,
                     const std::vector<std::pair<int, int>>& modes, int threads, double area_threshold) {
  AtlasOptions o;
  o.task = parse_task(task);
  o.order_a = order_a;
  o.order_e = order_e < 0 ? order_a : order_e;
  o.mode_bound = mode_bound >= 0 ? mode_bound : (o.task == AtlasTask::Triple ? 8 : 12);
  o.grid_n = grid_n;
  o.threads = threads;
  o.area_threshold = area_threshold;
  for (const auto& [m, k] : modes) o.modes.push_back(Mode::of(m, k));
  py::gil_scoped_release release;
  return scan_modes(o);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Hansen and Fourier coefficients and zero-set diagnostics.";
  m.attr("__version__") = kVersion;

  py::register_exception<MethodError>(m, "MethodError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def(
      "hansen",
      [](int n, int mm, int k, int order, const std::string& method) {
        return series_dict(hansen({n, mm, k}, order, parse_method(method)));
      },
      py::arg("n"), py::arg("m"), py::arg("k"), py::arg("order"), py::arg("method") = "auto",
      "X_k^{n,m}(e) truncated at e^order, as {power: Fraction}.");
  m.def(
      "hansen_text",
      [](int n, int mm, int k, int order, const std::string& method) {
        return hansen({n, mm, k}, order, parse_method(method)).pretty();
      },
      py::arg("n"), py::arg("m"), py::arg("k"), py::arg("order"), py::arg("method") = "auto");
  m.def(
      "hansen_value",
      [](int n, int mm, int k, int order, double e) {
        return static_cast<double>(hansen({n, mm, k}, order).evaluate(static_cast<long double>(e)));
      },
      py::arg("n"), py::arg("m"), py::arg("k"), py::arg("order"), py::arg("e"));

  m.def(
      "fourier",
      [](int mm, int k, int order_a, int order_e) {
        return series_dict(fourier_coefficient(Mode::of(mm, k), order_a, order_e < 0 ? order_a : order_e));
      },
      py::arg("m"), py::arg("k"), py::arg("order_a"), py::arg("order_e") = -1,
      "f_{m,k}(a,e) as {(n, q): Fraction} for the monomials a^n e^q.");
  m.def(
      "fourier_value",
      [](int mm, int k, int order_a, int order_e, double a, double e) {
        return fourier_coefficient(Mode::of(mm, k), order_a, order_e).evaluate(a, e);
      },
      py::arg("m"), py::arg("k"), py::arg("order_a"), py::arg("order_e"), py::arg("a"), py::arg("e"));
  m.def(
      "tmk",
      [](int mm, int k) {
        const AsymptoticCoefficient t = t_mk(Mode::of(mm, k));
        return py::make_tuple(fraction(t.t_value), case_label(t.case_label));
      },
      py::arg("m"), py::arg("k"), "Leading coefficient t_{m,k} and its case label.");

  m.def(
      "solve_kepler",
      [](double ell, double e) {
        const OrbitPoint p = solve_kepler(ell, e);
        return py::make_tuple(p.u, p.r_over_a, p.f);
      },
      py::arg("ell"), py::arg("e"), "(u, r/a, f) for mean anomaly ell.");
  m.def("oracle_hansen", &oracle_hansen, py::arg("n"), py::arg("m"), py::arg("k"), py::arg("e"),
        py::arg("samples") = 4096);
  m.def("oracle_fourier", &oracle_fourier, py::arg("m"), py::arg("k"), py::arg("a"), py::arg("e"),
        py::arg("samples") = 256);

  py::class_<AtlasReport>(m, "AtlasReport")
      .def_readonly("curve_count", &AtlasReport::curve_count)
      .def_readonly("double_count", &AtlasReport::double_count)
      .def_readonly("triple_zero_count", &AtlasReport::triple_zero_count)
      .def_property_readonly("min_distance",
                             [](const AtlasReport& r) -> py::object {
                               return r.min_distance < 0 ? py::none() : py::cast(r.min_distance);
                             })
      .def("json", &atlas_json)
      .def("csv", &curves_csv)
      .def("svg", &atlas_svg, py::arg("min_distance_circle") = true);

  m.def("scan", &run_scan, py::arg("task") = "curves", py::arg("order_a") = 60, py::arg("order_e") = -1,
        py::arg("mode_bound") = -1, py::arg("grid_n") = 512, py::arg("modes") = std::vector<std::pair<int, int>>{},
        py::arg("threads") = 0, py::arg("area_threshold") = 1e-3,
        "Zero curves, double zeros or triangle diagnostics over a set of modes.");
}
