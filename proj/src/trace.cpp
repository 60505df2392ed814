#include "boostmg/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace boostmg {

double HourlyTrace::peak_load() const {
  double p = 0.0;
  for (double v : load_kw) p = std::max(p, v);
  return p;
}

double HourlyTrace::total_load_kwh() const {
  double s = 0.0;
  for (double v : load_kw) s += v;
  return s;
}

void HourlyTrace::validate() const {
  const std::size_t h = load_kw.size();
  if (h == 0) throw std::invalid_argument("trace: empty");
  if (grid_price.size() != h || pv_availability.size() != h)
    throw std::invalid_argument("trace: series lengths disagree");
  for (std::size_t t = 0; t < h; ++t) {
    if (!std::isfinite(load_kw[t]) || !std::isfinite(grid_price[t]) ||
        !std::isfinite(pv_availability[t]))
      throw std::invalid_argument("trace: non-finite value at hour " +
                                  std::to_string(t));
    if (load_kw[t] < 0.0)
      throw std::invalid_argument("trace: negative load at hour " +
                                  std::to_string(t));
    if (grid_price[t] < 0.0)
      throw std::invalid_argument("trace: negative grid price at hour " +
                                  std::to_string(t));
    if (pv_availability[t] < 0.0 || pv_availability[t] > 1.0)
      throw std::invalid_argument("trace: pv availability outside [0,1] at hour " +
                                  std::to_string(t));
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    const auto a = s.find_first_not_of(" \t");
    const auto b = s.find_last_not_of(" \t");
    s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
  }
  return out;
}

double parse_number(const std::string& s, std::size_t row, const std::string& col) {
  double v;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last)
    throw std::invalid_argument("trace: cannot parse " + col + " at data row " +
                                std::to_string(row) + ": '" + s + "'");
  return v;
}

std::string format_number(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

}  // namespace

std::vector<double> irradiance_to_availability(
    const std::vector<double>& irradiance_wm2, double stc_irradiance_wm2,
    double derate) {
  if (!(stc_irradiance_wm2 > 0.0))
    throw std::invalid_argument("irradiance conversion: stc must be positive");
  if (!(derate > 0.0) || derate > 1.0)
    throw std::invalid_argument("irradiance conversion: derate must be in (0,1]");
  std::vector<double> out(irradiance_wm2.size());
  for (std::size_t t = 0; t < out.size(); ++t) {
    const double g = irradiance_wm2[t];
    if (!std::isfinite(g))
      throw std::invalid_argument("irradiance conversion: non-finite value at hour " +
                                  std::to_string(t));
    if (g < 0.0)
      throw std::invalid_argument("irradiance conversion: negative value at hour " +
                                  std::to_string(t));
    out[t] = std::min(1.0, derate * g / stc_irradiance_wm2);
  }
  return out;
}

HourlyTrace load_trace(const std::string& path, const TraceFormat& fmt) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("trace: cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("trace: empty file: " + path);
  const auto header = split_csv(line);
  int c_hour = -1, c_load = -1, c_price = -1, c_avail = -1, c_irr = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "hour") c_hour = static_cast<int>(i);
    else if (header[i] == "load_kw") c_load = static_cast<int>(i);
    else if (header[i] == "grid_price") c_price = static_cast<int>(i);
    else if (header[i] == "pv_availability") c_avail = static_cast<int>(i);
    else if (header[i] == "irradiance_wm2") c_irr = static_cast<int>(i);
    else throw std::invalid_argument("trace: unknown column '" + header[i] + "'");
  }
  if (c_hour < 0 || c_load < 0 || c_price < 0 || (c_avail < 0) == (c_irr < 0))
    throw std::invalid_argument(
        "trace: header must be hour,load_kw,grid_price and exactly one of "
        "pv_availability or irradiance_wm2");

  HourlyTrace tr;
  std::vector<double> irr;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++row;
    const auto f = split_csv(line);
    if (f.size() != header.size())
      throw std::invalid_argument("trace: ragged row " + std::to_string(row) +
                                  " (" + std::to_string(f.size()) + " columns)");
    parse_number(f[c_hour], row, "hour");
    tr.load_kw.push_back(parse_number(f[c_load], row, "load_kw"));
    tr.grid_price.push_back(parse_number(f[c_price], row, "grid_price"));
    if (c_avail >= 0)
      tr.pv_availability.push_back(parse_number(f[c_avail], row, "pv_availability"));
    else
      irr.push_back(parse_number(f[c_irr], row, "irradiance_wm2"));
  }
  if (c_irr >= 0)
    tr.pv_availability =
        irradiance_to_availability(irr, fmt.stc_irradiance_wm2, fmt.derate);
  tr.validate();
  return tr;
}

void save_trace(const HourlyTrace& trace, const std::string& path) {
  trace.validate();
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("trace: cannot write file: " + path);
  out << "hour,load_kw,grid_price,pv_availability\n";
  for (int t = 0; t < trace.hours(); ++t) {
    out << t << ',' << format_number(trace.load_kw[t]) << ','
        << format_number(trace.grid_price[t]) << ','
        << format_number(trace.pv_availability[t]) << '\n';
  }
  if (!out) throw std::runtime_error("trace: write failed: " + path);
}

namespace {

// uniform in [0,1), bit-stable across platforms
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

HourlyTrace synth_trace(std::uint64_t seed, int hours) {
  if (hours < 1) throw std::invalid_argument("synth_trace: hours must be >= 1");
  constexpr double kTau = 2.0 * std::numbers::pi;
  std::mt19937_64 rng(seed);
  HourlyTrace tr;
  tr.load_kw.reserve(hours);
  tr.grid_price.reserve(hours);
  tr.pv_availability.reserve(hours);
  double cloud_day = 0.0;
  for (int t = 0; t < hours; ++t) {
    const int h = t % 24;
    const int day = t / 24;
    const int doy = day % 365;
    if (h == 0 || t == 0) cloud_day = unit_draw(rng);
    const double wobble = unit_draw(rng);
    const double load_noise = unit_draw(rng);

    const double seasonal_pv = 0.75 + 0.25 * std::cos(kTau * (doy - 172) / 365.0);
    const double bell = h < 6 || h > 18
                            ? 0.0
                            : std::sin(std::numbers::pi * (h - 6) / 12.0);
    const double attenuation = 1.0 - 0.6 * cloud_day * (0.7 + 0.3 * wobble);
    const double avail = std::clamp(seasonal_pv * bell * attenuation, 0.0, 1.0);

    const double base = 55.0 + 30.0 * std::exp(-(h - 8.5) * (h - 8.5) / 4.5) +
                        55.0 * std::exp(-(h - 19.0) * (h - 19.0) / 6.0);
    const double season_load = 1.0 + 0.12 * std::cos(kTau * (doy - 15) / 365.0);
    const double load = base * season_load * (0.95 + 0.10 * load_noise);

    const double price = (h >= 16 && h <= 21) ? 0.34 : 0.13;

    tr.pv_availability.push_back(avail);
    tr.load_kw.push_back(load);
    tr.grid_price.push_back(price);
  }
  tr.validate();
  return tr;
}

std::vector<Window> windows(int hours, int length) {
  if (length < 1) throw std::invalid_argument("windows: length must be >= 1");
  if (hours < 1) throw std::invalid_argument("windows: hours must be >= 1");
  std::vector<Window> out;
  for (int s = 0; s < hours; s += length)
    out.push_back({s, std::min(length, hours - s)});
  return out;
}

}  // namespace boostmg
