#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "boostmg/trace.hpp"

using namespace boostmg;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = (std::filesystem::temp_directory_path() /
            ("boostmg_trace_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++) + ".csv"))
               .string();
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("three-row csv loads verbatim") {
  TempFile f(
      "hour,load_kw,grid_price,pv_availability\n"
      "0,1,0.1,0\n"
      "1,2,0.1,0.5\n"
      "2,3,0.1,1\n");
  const auto tr = load_trace(f.path);
  REQUIRE(tr.hours() == 3);
  CHECK(tr.load_kw == std::vector<double>{1, 2, 3});
  CHECK(tr.grid_price == std::vector<double>{0.1, 0.1, 0.1});
  CHECK(tr.pv_availability == std::vector<double>{0, 0.5, 1});
}

TEST_CASE("negative load is rejected with the offending index") {
  TempFile f(
      "hour,load_kw,grid_price,pv_availability\n"
      "0,1,0.1,0\n"
      "1,-2,0.1,0.5\n");
  CHECK_THROWS_WITH_AS(load_trace(f.path),
                       doctest::Contains("negative load at hour 1"),
                       std::invalid_argument);
}

TEST_CASE("malformed files are rejected") {
  SUBCASE("ragged row") {
    TempFile f(
        "hour,load_kw,grid_price,pv_availability\n"
        "0,1,0.1\n");
    CHECK_THROWS_WITH_AS(load_trace(f.path), doctest::Contains("ragged row 1"),
                         std::invalid_argument);
  }
  SUBCASE("non-finite value") {
    TempFile f(
        "hour,load_kw,grid_price,pv_availability\n"
        "0,nan,0.1,0\n");
    CHECK_THROWS_AS(load_trace(f.path), std::invalid_argument);
  }
  SUBCASE("availability above one") {
    TempFile f(
        "hour,load_kw,grid_price,pv_availability\n"
        "0,1,0.1,1.5\n");
    CHECK_THROWS_AS(load_trace(f.path), std::invalid_argument);
  }
  SUBCASE("unknown column") {
    TempFile f("hour,load_kw,grid_price,voltage\n0,1,0.1,3\n");
    CHECK_THROWS_AS(load_trace(f.path), std::invalid_argument);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_trace("/nonexistent/nowhere.csv"), std::invalid_argument);
  }
}

TEST_CASE("irradiance conversion") {
  CHECK(irradiance_to_availability({0.0}, 1000.0, 0.9)[0] == 0.0);
  CHECK(irradiance_to_availability({1000.0}, 1000.0, 1.0)[0] == 1.0);
  CHECK(irradiance_to_availability({1200.0}, 1000.0, 0.9)[0] == 1.0);  // clamp
  CHECK(irradiance_to_availability({500.0}, 1000.0, 0.9)[0] ==
        doctest::Approx(0.45));
  CHECK_THROWS_AS(irradiance_to_availability({-1.0}, 1000.0, 0.9),
                  std::invalid_argument);
  CHECK_THROWS_AS(irradiance_to_availability({1.0}, 0.0, 0.9),
                  std::invalid_argument);
}

TEST_CASE("irradiance column triggers conversion on load") {
  TempFile f(
      "hour,load_kw,grid_price,irradiance_wm2\n"
      "0,1,0.1,0\n"
      "1,2,0.1,500\n"
      "2,3,0.1,2000\n");
  TraceFormat fmt;
  fmt.stc_irradiance_wm2 = 1000.0;
  fmt.derate = 0.9;
  const auto tr = load_trace(f.path, fmt);
  CHECK(tr.pv_availability[0] == 0.0);
  CHECK(tr.pv_availability[1] == doctest::Approx(0.45));
  CHECK(tr.pv_availability[2] == 1.0);
}

TEST_CASE("synthetic trace shape and determinism") {
  const auto a = synth_trace(0, 24);
  REQUIRE(a.hours() == 24);
  for (int h = 0; h < 6; ++h) CHECK(a.pv_availability[h] == 0.0);
  for (int h = 19; h < 24; ++h) CHECK(a.pv_availability[h] == 0.0);
  CHECK(a.pv_availability[12] > 0.2);
  int argmax = 0;
  for (int h = 1; h < 24; ++h)
    if (a.pv_availability[h] > a.pv_availability[argmax]) argmax = h;
  CHECK(argmax >= 10);
  CHECK(argmax <= 14);
  const auto b = synth_trace(0, 24);
  CHECK(a.load_kw == b.load_kw);
  CHECK(a.grid_price == b.grid_price);
  CHECK(a.pv_availability == b.pv_availability);
  const auto c = synth_trace(1, 24);
  CHECK(a.load_kw != c.load_kw);
}

TEST_CASE("synthetic year passes validation") {
  const auto tr = synth_trace(0, 8760);
  CHECK(tr.hours() == 8760);
  CHECK(tr.peak_load() > 100.0);
  CHECK(tr.peak_load() < 200.0);
  // two-tier prices
  double lo = 1e9, hi = 0.0;
  for (double p : tr.grid_price) {
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  CHECK(lo == doctest::Approx(0.13));
  CHECK(hi == doctest::Approx(0.34));
}

TEST_CASE("windows cover the horizon without overlap") {
  auto w = windows(8760, 168);
  REQUIRE(w.size() == 53);
  CHECK(w[51].length == 168);
  CHECK(w[52].length == 24);  // 8760 = 52*168 + 24
  CHECK(windows(168, 168).size() == 1);
  auto small = windows(10, 3);
  REQUIRE(small.size() == 4);
  CHECK(small[3].length == 1);

  std::mt19937_64 rng(3);
  for (int it = 0; it < 40; ++it) {
    const int hours = 1 + static_cast<int>(rng() % 500);
    const int len = 1 + static_cast<int>(rng() % 60);
    const auto ws = windows(hours, len);
    int expect = 0;
    for (const auto& win : ws) {
      CHECK(win.start == expect);
      CHECK(win.length >= 1);
      expect = win.start + win.length;
    }
    CHECK(expect == hours);
  }
}

TEST_CASE("csv round-trip is exact") {
  const auto tr = synth_trace(42, 200);
  TempFile f("");
  save_trace(tr, f.path);
  const auto back = load_trace(f.path);
  CHECK(back.load_kw == tr.load_kw);
  CHECK(back.grid_price == tr.grid_price);
  CHECK(back.pv_availability == tr.pv_availability);
}
