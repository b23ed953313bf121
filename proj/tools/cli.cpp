#include "cli.hpp"

#include "pcr3bp/fourier.hpp"
#include "pcr3bp/hansen.hpp"
#include "pcr3bp/oracle.hpp"
#include "pcr3bp/series.hpp"
#include "pcr3bp/version.hpp"
#include "pcr3bp/zero_atlas.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace pcr3bp::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Disagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntRange {
  int lo = 0, hi = 0;
  bool single() const { return lo == hi; }
};

IntRange parse_range(const std::string& text, const char* flag) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw UsageError(std::string("bad value for ") + flag + ": '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  IntRange r{to_int(text.substr(0, dots)), to_int(text.substr(dots + 2))};
  if (r.lo > r.hi) throw UsageError(std::string("empty range for ") + flag + ": '" + text + "'");
  return r;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// Writes `files` (name -> content) under `dir` together with manifest.json.
void write_outputs(const std::string& dir, const std::string& command, const ordered_json& inputs,
                   const std::vector<std::pair<std::string, std::string>>& files, std::ostream& out) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory '" + dir + "': " + ec.message());
  ordered_json manifest;
  manifest["tool"] = "pcr3bp";
  manifest["version"] = kVersion;
  manifest["command"] = command;
  manifest["inputs"] = inputs;
  ordered_json names = ordered_json::array();
  for (const auto& [name, content] : files) {
    std::ofstream f(fs::path(dir) / name, std::ios::binary);
    f << content;
    if (!f) throw UsageError("cannot write '" + (fs::path(dir) / name).string() + "'");
    names.push_back(name);
  }
  manifest["files"] = names;
  std::ofstream m(fs::path(dir) / "manifest.json", std::ios::binary);
  m << manifest.dump(1) << '\n';
  if (!m) throw UsageError("cannot write manifest in '" + dir + "'");
  out << "wrote " << files.size() << " file(s) and manifest.json to " << dir << '\n';
}

// Prints a single result to stdout or stores it under --out.
void emit(const std::string& out_dir, const std::string& command, const ordered_json& inputs,
          const std::string& name, const std::string& content, std::ostream& out) {
  if (out_dir.empty())
    out << content;
  else
    write_outputs(out_dir, command, inputs, {{name, content}}, out);
}

struct Orders {
  int order = -1;
  int order_a = -1;
  int order_e = -1;

  void add(CLI::App* app, int fallback) {
    order = fallback;
    app->add_option("--order", order, "truncation order in both a and e")->check(CLI::NonNegativeNumber);
    app->add_option("--order-a", order_a, "truncation order in a")->check(CLI::NonNegativeNumber);
    app->add_option("--order-e", order_e, "truncation order in e")->check(CLI::NonNegativeNumber);
  }
  int a() const { return order_a >= 0 ? order_a : order; }
  int e() const { return order_e >= 0 ? order_e : order; }
};

Mode parse_mode(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("mode must be written m,k: '" + text + "'");
  const IntRange m = parse_range(text.substr(0, comma), "--modes");
  const IntRange k = parse_range(text.substr(comma + 1), "--modes");
  if (!m.single() || !k.single()) throw UsageError("mode must be written m,k: '" + text + "'");
  if (m.lo < 0) throw UsageError("mode " + text + ": m must be >= 0 (modes (m,k) are taken with m >= 0)");
  return Mode::of(m.lo, k.lo);
}

// ---- hansen ---------------------------------------------------------------

struct HansenArgs {
  std::string n = "0", m = "0", k = "0";
  int order = 7;
  std::string method = "auto";
  bool table = false;
  std::string format = "text";
  std::string out_dir;
};

int cmd_hansen(const HansenArgs& a, std::ostream& out) {
  const IntRange n = parse_range(a.n, "--n"), m = parse_range(a.m, "--m"), k = parse_range(a.k, "--k");
  HansenMethod method;
  try {
    method = parse_method(a.method);
  } catch (const MethodError& e) {
    throw UsageError(e.what());
  }
  if (!k.single()) throw UsageError("--k takes a single value");
  if (n.lo < 0) throw UsageError("--n must be >= 0");
  ordered_json inputs = {{"n", a.n}, {"m", a.m}, {"k", a.k}, {"order", a.order}, {"method", a.method},
                         {"table", a.table}, {"format", a.format}};

  if (a.table) {
    const std::string body = hansen_table(n.lo, n.hi, m.lo, m.hi, k.lo, a.order,
                                          a.format == "csv" ? TableFormat::Csv : TableFormat::Text, method);
    emit(a.out_dir, "hansen", inputs, a.format == "csv" ? "hansen_table.csv" : "hansen_table.txt", body, out);
    return kOk;
  }
  if (!n.single() || !m.single()) throw UsageError("ranges need --table");
  const SeriesE s = hansen({n.lo, m.lo, k.lo}, a.order, method);
  std::string body;
  if (a.format == "csv") {
    body = "q,coefficient\n";
    for (int q = 0; q <= s.order(); ++q) body += std::to_string(q) + "," + s.coeff(q).fraction() + "\n";
  } else {
    body = s.pretty() + "\n";
  }
  emit(a.out_dir, "hansen", inputs, a.format == "csv" ? "hansen.csv" : "hansen.txt", body, out);
  return kOk;
}

// ---- fourier --------------------------------------------------------------

struct FourierArgs {
  int m = 0, k = 0;
  Orders orders;
  std::vector<double> eval;
  std::string format = "csv";
  std::string out_dir;
};

int cmd_fourier(const FourierArgs& a, std::ostream& out, std::ostream& err) {
  if (a.m < 0) throw UsageError("m must be >= 0: modes (m,k) are taken with m >= 0, use (-m,-k) instead");
  const Mode mode = Mode::of(a.m, a.k);
  const int Na = a.orders.a(), Ne = a.orders.e();
  if (!visible(mode, Na) || std::abs(a.m - a.k) > Ne)
    err << "warning: mode (" << a.m << "," << a.k << ") is not visible at order (" << Na << "," << Ne
        << "): m* = " << mode.m_star << ", |m-k| = " << std::abs(a.m - a.k) << "; the truncated series is zero\n";
  const SeriesAE f = fourier_coefficient(mode, Na, Ne);
  ordered_json inputs = {{"m", a.m}, {"k", a.k}, {"order", {Na, Ne}}, {"format", a.format}};

  if (!a.eval.empty()) {
    const double x = a.eval[0], y = a.eval[1];
    if (!(x >= 0 && x < 1 && y >= 0 && y < 1)) throw DomainError("--eval needs 0 <= a < 1 and 0 <= e < 1");
    inputs["eval"] = a.eval;
    const std::string body = fmt_double(f.evaluate(x, y)) + "\n";
    emit(a.out_dir, "fourier", inputs, "fourier_eval.txt", body, out);
    return kOk;
  }
  if (a.format == "json")
    emit(a.out_dir, "fourier", inputs, "fourier.json", coefficient_matrix_json(mode, f), out);
  else if (a.format == "text")
    emit(a.out_dir, "fourier", inputs, "fourier.txt", f.to_text() + "\n", out);
  else
    emit(a.out_dir, "fourier", inputs, "fourier.csv", coefficient_matrix_csv(f), out);
  return kOk;
}

// ---- tmk ------------------------------------------------------------------

struct TmkArgs {
  int m = 0, k = 0;
  std::string out_dir;
};

int cmd_tmk(const TmkArgs& a, std::ostream& out) {
  if (a.m < 0) throw UsageError("m must be >= 0: modes (m,k) are taken with m >= 0");
  const AsymptoticCoefficient t = t_mk(Mode::of(a.m, a.k));
  std::ostringstream body;
  body << t.t_value.str() << " (" << case_label(t.case_label) << ")\n";
  emit(a.out_dir, "tmk", {{"m", a.m}, {"k", a.k}}, "tmk.txt", body.str(), out);
  return kOk;
}

// ---- zeros ----------------------------------------------------------------

struct ZerosArgs {
  std::string task = "curves";
  Orders orders;
  int mmax = -1;
  std::vector<std::string> modes;
  int grid = 512;
  int threads = 0;
  double area_threshold = 1e-3;
  std::vector<std::string> formats{"json"};
  bool no_circle = false;
  std::string out_dir;
};

int cmd_zeros(const ZerosArgs& a, std::ostream& out, std::ostream& err) {
  AtlasOptions o;
  try {
    o.task = parse_task(a.task);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  o.order_a = a.orders.a();
  o.order_e = a.orders.e();
  o.mode_bound = a.mmax >= 0 ? a.mmax : (o.task == AtlasTask::Triple ? 8 : 12);
  o.grid_n = a.grid;
  o.threads = a.threads;
  o.area_threshold = a.area_threshold;
  for (const auto& s : a.modes) o.modes.push_back(parse_mode(s));
  for (const auto& f : a.formats)
    if (f != "csv" && f != "json" && f != "svg") throw UsageError("unknown format '" + f + "'");

  const AtlasReport report = scan_modes(o);
  for (const auto& ma : report.modes)
    if (ma.skipped) err << "warning: mode (" << ma.mode.m << "," << ma.mode.k << ") skipped: " << ma.note << '\n';

  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& f : a.formats) {
    if (f == "csv") files.emplace_back("curves.csv", curves_csv(report));
    if (f == "json") files.emplace_back("atlas.json", atlas_json(report));
    if (f == "svg") files.emplace_back("atlas.svg", atlas_svg(report, !a.no_circle));
  }
  if (a.out_dir.empty()) {
    for (const auto& [name, content] : files) out << content;
    return kOk;
  }
  ordered_json modes = ordered_json::array();
  for (const Mode& m : o.modes) modes.push_back({m.m, m.k});
  const ordered_json inputs = {{"task", task_name(o.task)}, {"order", {o.order_a, o.order_e}},
                               {"mode_bound", o.mode_bound}, {"modes", modes},
                               {"grid_n", o.grid_n}, {"area_threshold", o.area_threshold}};
  write_outputs(a.out_dir, "zeros", inputs, files, out);
  out << "modes " << report.modes.size() << " curves " << report.curve_count << " doubles " << report.double_count
      << " triple_zeros " << report.triple_zero_count << '\n';
  return kOk;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::vector<std::string> methods;
  std::string n = "0..8", m = "-3..3", k = "0..10";
  int order = 12;
  int repeat = 1;
  std::string out_dir;
};

// Bench method names: the Hansen methods plus k0rec for the k = 0 recursions.
bool applicable(const std::string& method, const HansenKey& key) {
  if (method == "k0" || method == "k0rec") return key.k == 0 && (method == "k0" || key.m >= 0);
  if (method == "balmino") return key.k - key.m >= 0;
  return true;
}

SeriesE compute(const std::string& method, const HansenKey& key, int order) {
  if (method == "k0rec") return hansen_k0_recursive(key.n, key.m, order).value;
  return hansen(key, order, parse_method(method));
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.methods.empty()) throw UsageError("bench needs at least one method");
  for (const auto& mname : a.methods)
    if (mname != "k0rec") try {
        parse_method(mname);
      } catch (const MethodError& e) {
        throw UsageError(e.what());
      }
  const IntRange n = parse_range(a.n, "--n"), m = parse_range(a.m, "--m"), k = parse_range(a.k, "--k");
  if (n.lo < 0) throw UsageError("--n must be >= 0");
  std::vector<HansenKey> keys;
  for (int x = n.lo; x <= n.hi; ++x)
    for (int y = m.lo; y <= m.hi; ++y)
      for (int z = k.lo; z <= k.hi; ++z) keys.push_back({x, y, z});

  // Equality first: every method against the first one applicable to each key.
  std::map<HansenKey, std::pair<std::string, SeriesE>> reference;
  std::vector<std::size_t> counts(a.methods.size(), 0);
  int mismatches = 0;
  for (std::size_t i = 0; i < a.methods.size(); ++i) {
    for (const HansenKey& key : keys) {
      if (!applicable(a.methods[i], key)) continue;
      ++counts[i];
      const SeriesE s = compute(a.methods[i], key, a.order);
      auto it = reference.find(key);
      if (it == reference.end()) {
        reference.emplace(key, std::make_pair(a.methods[i], s));
      } else if (!(it->second.second == s)) {
        ++mismatches;
        err << "disagreement X_" << key.k << "^{" << key.n << "," << key.m << "}: " << it->second.first << " = "
            << it->second.second.pretty() << " vs " << a.methods[i] << " = " << s.pretty() << '\n';
      }
    }
  }
  if (mismatches > 0) throw Disagreement(std::to_string(mismatches) + " key(s) disagree across methods");

  std::ostringstream table;
  table << "method,keys,seconds\n";
  for (std::size_t i = 0; i < a.methods.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < a.repeat; ++r)
      for (const HansenKey& key : keys)
        if (applicable(a.methods[i], key)) compute(a.methods[i], key, a.order);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", secs / a.repeat);
    table << a.methods[i] << ',' << counts[i] << ',' << buf << '\n';
  }
  table << "agreement: " << reference.size() << " keys equal across methods\n";
  // timings vary run to run, so nothing here goes into a manifest
  if (!a.out_dir.empty()) {
    write_outputs(a.out_dir, "bench", {{"methods", a.methods}, {"n", a.n}, {"m", a.m}, {"k", a.k}, {"order", a.order}},
                  {{"bench.csv", table.str()}}, out);
  } else {
    out << table.str();
  }
  return kOk;
}

// ---- oracle ---------------------------------------------------------------

struct OracleArgs {
  std::string kind = "fourier";
  int n = 0, m = 0, k = 0;
  double a = 0.1, e = 0.1;
  Orders orders;
  int samples = 0;
  double tol = 1e-8;
};

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  double series = 0, quad = 0;
  if (a.kind == "hansen") {
    if (!(a.e >= 0 && a.e < 1)) throw DomainError("eccentricity must lie in [0, 1)");
    series = hansen({a.n, a.m, a.k}, a.orders.e()).evaluate(a.e);
    quad = oracle_hansen(a.n, a.m, a.k, a.e, a.samples > 0 ? a.samples : 4096);
  } else if (a.kind == "fourier") {
    if (a.m < 0) throw UsageError("m must be >= 0: modes (m,k) are taken with m >= 0");
    quad = oracle_fourier(a.m, a.k, a.a, a.e, a.samples > 0 ? a.samples : 256);
    series = fourier_coefficient(Mode::of(a.m, a.k), a.orders.a(), a.orders.e()).evaluate(a.a, a.e);
  } else {
    throw UsageError("--kind must be hansen or fourier");
  }
  const double diff = std::abs(series - quad);
  out << "series " << fmt_double(series) << "\nquadrature " << fmt_double(quad) << "\ndifference " << fmt_double(diff)
      << '\n';
  if (!(diff <= a.tol)) throw Disagreement("series and quadrature differ by more than " + fmt_double(a.tol));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hansen coefficients, Fourier coefficients and zero sets of the planar circular restricted three-body perturbing function", "pcr3bp"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "key=value file; subcommand keys as [section] or section.key");
  app.require_subcommand(1);

  HansenArgs ha;
  auto* hansen_cmd = app.add_subcommand("hansen", "exact Hansen coefficient X_k^{n,m}(e)");
  hansen_cmd->add_option("--n", ha.n, "exponent n, or a range lo..hi with --table");
  hansen_cmd->add_option("--m", ha.m, "multiplier m, or a range with --table");
  hansen_cmd->add_option("--k", ha.k, "mean-anomaly index k");
  hansen_cmd->add_option("--order", ha.order, "truncation order in e")->check(CLI::NonNegativeNumber);
  hansen_cmd->add_option("--method", ha.method, "auto, k0, newcomb, wnuk or balmino");
  hansen_cmd->add_flag("--table", ha.table, "rows n, columns m");
  hansen_cmd->add_option("--format", ha.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  hansen_cmd->add_option("--out", ha.out_dir, "output directory");

  FourierArgs fa;
  auto* fourier_cmd = app.add_subcommand("fourier", "coefficient matrix of f_{m,k}(a,e)");
  fourier_cmd->add_option("--m", fa.m, "mode m >= 0")->required();
  fourier_cmd->add_option("--k", fa.k, "mode k")->required();
  fa.orders.add(fourier_cmd, 10);
  fourier_cmd->add_option("--eval", fa.eval, "evaluate at a e")->expected(2);
  fourier_cmd->add_option("--format", fa.format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
  fourier_cmd->add_option("--out", fa.out_dir, "output directory");

  TmkArgs ta;
  auto* tmk_cmd = app.add_subcommand("tmk", "leading coefficient t_{m,k} with its case label");
  tmk_cmd->add_option("--m", ta.m, "mode m >= 0")->required();
  tmk_cmd->add_option("--k", ta.k, "mode k")->required();
  tmk_cmd->add_option("--out", ta.out_dir, "output directory");

  ZerosArgs za;
  auto* zeros_cmd = app.add_subcommand("zeros", "zero curves, double zeros and triangle diagnostics");
  zeros_cmd->add_option("--task", za.task, "curves, double or triple")
      ->check(CLI::IsMember({"curves", "double", "triple"}));
  za.orders.add(zeros_cmd, 60);
  zeros_cmd->add_option("--mmax", za.mmax, "bound on |m| + |k| (default 12, 8 for triple)")
      ->check(CLI::NonNegativeNumber);
  zeros_cmd->add_option("--modes", za.modes, "explicit modes m,k (repeatable)");
  zeros_cmd->add_option("--grid", za.grid, "grid points per axis")->check(CLI::Range(16, 1 << 14));
  zeros_cmd->add_option("--threads", za.threads, "worker threads (0: PCR3BP_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  zeros_cmd->add_option("--area-threshold", za.area_threshold, "report triangles below this area")
      ->check(CLI::PositiveNumber);
  zeros_cmd->add_option("--format", za.formats, "csv, json and/or svg")->delimiter(',');
  zeros_cmd->add_flag("--no-circle", za.no_circle, "omit the min-distance circle in the SVG");
  zeros_cmd->add_option("--out", za.out_dir, "output directory");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "cross-check and time Hansen methods");
  bench_cmd->add_option("--methods", ba.methods, "k0, k0rec, newcomb, wnuk, balmino")->delimiter(',');
  bench_cmd->add_option("--n", ba.n, "range of n");
  bench_cmd->add_option("--m", ba.m, "range of m");
  bench_cmd->add_option("--k", ba.k, "range of k");
  bench_cmd->add_option("--order", ba.order, "truncation order in e")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--repeat", ba.repeat, "timing repetitions")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", ba.out_dir, "output directory");

  OracleArgs oa;
  auto* oracle_cmd = app.add_subcommand("oracle", "compare a series value against direct quadrature");
  oracle_cmd->add_option("--kind", oa.kind, "hansen or fourier")->check(CLI::IsMember({"hansen", "fourier"}));
  oracle_cmd->add_option("--n", oa.n, "Hansen exponent n");
  oracle_cmd->add_option("--m", oa.m, "m");
  oracle_cmd->add_option("--k", oa.k, "k");
  oracle_cmd->add_option("--a", oa.a, "semi-major axis ratio");
  oracle_cmd->add_option("--e", oa.e, "eccentricity");
  oa.orders.add(oracle_cmd, 30);
  oracle_cmd->add_option("--samples", oa.samples, "quadrature samples per axis")->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--tol", oa.tol, "allowed difference")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (hansen_cmd->parsed()) return cmd_hansen(ha, out);
    if (fourier_cmd->parsed()) return cmd_fourier(fa, out, err);
    if (tmk_cmd->parsed()) return cmd_tmk(ta, out);
    if (zeros_cmd->parsed()) return cmd_zeros(za, out, err);
    if (bench_cmd->parsed()) return cmd_bench(ba, out, err);
    if (oracle_cmd->parsed()) return cmd_oracle(oa, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Disagreement& e) {
    err << "error: " << e.what() << '\n';
    return kDisagreement;
  } catch (const MethodError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}

}  // namespace pcr3bp::cli
