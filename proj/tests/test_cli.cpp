#include <doctest.h>

#include "cli.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using pcr3bp::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pcr3bp_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("cli_reporting") {

TEST_CASE("hansen") {
  CHECK(call({"hansen", "--n", "2", "--m", "2", "--k", "0", "--order", "7"}).out == "5/2 e^2\n");
  CHECK(call({"hansen", "--n", "0", "--m", "0", "--k", "4", "--order", "7"}).out == "0\n");
  const Result table = call({"hansen", "--table", "--k", "1", "--n", "0..15", "--m", "0..3", "--order", "7"});
  CHECK(table.code == 0);
  CHECK(table.out.rfind("n | X_1^{n,0} | X_1^{n,1} | X_1^{n,2} | X_1^{n,3}\n", 0) == 0);
  CHECK(std::count(table.out.begin(), table.out.end(), '\n') == 17);
  CHECK(call({"hansen", "--n", "5..2", "--table"}).code == 2);
  CHECK(call({"hansen", "--n", "0..3"}).code == 2);
  CHECK(call({"hansen", "--n", "x"}).code == 2);
  CHECK(call({"hansen", "--n", "2", "--method", "balmino", "--m", "3", "--k", "1"}).out ==
        call({"hansen", "--n", "2", "--method", "newcomb", "--m", "3", "--k", "1"}).out);
  const Result csv = call({"hansen", "--n", "2", "--m", "2", "--k", "0", "--order", "3", "--format", "csv"});
  CHECK(csv.out == "q,coefficient\n0,0/1\n1,0/1\n2,5/2\n3,0/1\n");
}

TEST_CASE("fourier") {
  const Result f00 = call({"fourier", "--m", "0", "--k", "0", "--order", "2"});
  CHECK(f00.code == 0);
  CHECK(f00.out == "n\\q,0,1,2\n0,-1/1,0/1,0/1\n1,0/1,0/1,0/1\n2,-1/4,0/1,-3/8\n");
  CHECK(call({"fourier", "--m", "2", "--k", "2", "--order", "2", "--eval", "0.1", "0.0"}).out == "-0.0075\n");

  const Result hidden = call({"fourier", "--m", "1", "--k", "1", "--order", "2"});
  CHECK(hidden.code == 0);
  CHECK(hidden.err.find("not visible") != std::string::npos);
  CHECK(hidden.out.find("-") == std::string::npos);

  const Result neg = call({"fourier", "--m", "-1", "--k", "2"});
  CHECK(neg.code == 2);
  CHECK(neg.err.find("m >= 0") != std::string::npos);
  CHECK(call({"fourier", "--m", "1", "--k", "2", "--eval", "1.5", "0"}).code == 3);

  const Result json = call({"fourier", "--m", "0", "--k", "0", "--order", "2", "--format", "json"});
  const auto j = nlohmann::json::parse(json.out);
  CHECK(j["coefficients"][2][0] == "-1/4");
}

TEST_CASE("tmk") {
  CHECK(call({"tmk", "--m", "2", "--k", "2"}).out == "-3/8 (A=)\n");
  CHECK(call({"tmk", "--m", "0", "--k", "0"}).out == "-1/4 (B=)\n");
  CHECK(call({"tmk", "--m", "2", "--k", "3"}).out == "-3/8 (A-)\n");
  CHECK(call({"tmk", "--m", "2"}).code == 2);
}

TEST_CASE("bench") {
  const Result r = call({"bench", "--methods", "newcomb,wnuk", "--n", "0..8", "--m", "-3..3", "--k", "0..10",
                         "--order", "12"});
  CHECK(r.code == 0);
  CHECK(r.out.find("newcomb,693,") != std::string::npos);
  CHECK(r.out.find("wnuk,693,") != std::string::npos);
  CHECK(r.out.find("agreement: 693") != std::string::npos);
  CHECK(call({"bench", "--methods", "k0,k0rec", "--n", "0..15", "--m", "0..3", "--k", "0", "--order", "7"}).code == 0);
  CHECK(call({"bench"}).code == 2);
  CHECK(call({"bench", "--methods", "nope"}).code == 2);
}

TEST_CASE("oracle") {
  CHECK(call({"oracle", "--kind", "hansen", "--n", "1", "--m", "2", "--k", "4", "--e", "0.2"}).code == 0);
  CHECK(call({"oracle", "--kind", "fourier", "--m", "2", "--k", "3", "--a", "0.1", "--e", "0.1"}).code == 0);
  // order 2 misses most of f_{0,0} + 1
  CHECK(call({"oracle", "--m", "0", "--k", "0", "--a", "0.3", "--e", "0.2", "--order", "2"}).code == 4);
  CHECK(call({"oracle", "--a", "0.9", "--e", "0.5"}).code == 3);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"zeros", "--grid", "8"}).code == 2);
  CHECK(call({"zeros", "--order", "-1"}).code == 2);
  CHECK(call({"zeros", "--area-threshold", "0"}).code == 2);
  CHECK(call({"zeros", "--modes", "5"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("zeros outputs are reproducible") {
  const fs::path d1 = scratch("a"), d2 = scratch("b");
  const std::vector<std::string> base{"zeros", "--task", "double", "--order", "20", "--mmax", "6", "--grid", "128",
                                      "--format", "csv,json,svg"};
  auto with = [&](const fs::path& d, const std::string& threads) {
    auto v = base;
    v.insert(v.end(), {"--out", d.string(), "--threads", threads});
    return call(v);
  };
  REQUIRE(with(d1, "1").code == 0);
  REQUIRE(with(d2, "3").code == 0);
  for (const char* name : {"curves.csv", "atlas.json", "atlas.svg", "manifest.json"}) {
    CAPTURE(name);
    REQUIRE(fs::exists(d1 / name));
    CHECK(slurp(d1 / name) == slurp(d2 / name));
  }
  const auto manifest = nlohmann::json::parse(slurp(d1 / "manifest.json"));
  CHECK(manifest["command"] == "zeros");
  CHECK(manifest["inputs"]["order"][0] == 20);
  CHECK(manifest["files"].size() == 3);
  CHECK(slurp(d1 / "atlas.svg").find("<!-- pcr3bp ") != std::string::npos);
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("zeros for an explicit mode") {
  const Result r = call({"zeros", "--task", "triple", "--order", "60", "--modes", "5,-2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["triple_zero_count"] == 0);
  const double inradius = j["modes"][0]["triangles"][0]["inradius"];
  CHECK(std::abs(inradius - 3.78e-5) < 0.5 * 3.78e-5);

  const Result skipped = call({"zeros", "--task", "triple", "--order", "10", "--modes", "5,-2"});
  CHECK(skipped.code == 0);
  CHECK(skipped.err.find("skipped") != std::string::npos);
}

TEST_CASE("config file") {
  const fs::path dir = scratch("cfg");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "run.ini");
    f << "[tmk]\nm=2\nk=3\n";
  }
  const Result r = call({"--config", (dir / "run.ini").string(), "tmk"});
  CHECK(r.code == 0);
  CHECK(r.out == "-3/8 (A-)\n");
  CHECK(call({"--config", (dir / "run.ini").string(), "tmk", "--k", "2"}).out == "-3/8 (A=)\n");
  fs::remove_all(dir);
}

}  // TEST_SUITE
