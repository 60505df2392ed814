#pragma once

// Hourly input data: load, grid price, and per-unit PV availability, plus
// windowing and the deterministic synthetic-year generator.

#include <cstdint>
#include <string>
#include <vector>

namespace boostmg {

struct HourlyTrace {
  std::vector<double> load_kw;
  std::vector<double> grid_price;       // $/kWh
  std::vector<double> pv_availability;  // per-unit of nameplate, in [0,1]

  int hours() const { return static_cast<int>(load_kw.size()); }
  double peak_load() const;
  double total_load_kwh() const;  // 1-hour timestep
  void validate() const;          // throws std::invalid_argument
};

struct Window {
  int start;
  int length;
};

// Irradiance-column conversion parameters (linear derate with clamp).
struct TraceFormat {
  double stc_irradiance_wm2 = 1000.0;
  double derate = 0.9;
};

// Reads the canonical CSV: header `hour,load_kw,grid_price,pv_availability`
// or `hour,load_kw,grid_price,irradiance_wm2` (column order free). An
// irradiance column is converted through `fmt`.
HourlyTrace load_trace(const std::string& path, const TraceFormat& fmt = {});

// Writes the canonical CSV with shortest round-trip number formatting, so
// save followed by load reproduces the trace exactly.
void save_trace(const HourlyTrace& trace, const std::string& path);

std::vector<double> irradiance_to_availability(
    const std::vector<double>& irradiance_wm2, double stc_irradiance_wm2,
    double derate);

// Reproducible synthetic year: diurnal PV bell with seasonal modulation and
// daily cloud factor, double-peak load with seeded noise, two-tier
// time-of-use grid price. Same seed, same trace, bit for bit.
HourlyTrace synth_trace(std::uint64_t seed, int hours);

// Consecutive non-overlapping windows covering [0, hours); the last window
// may be shorter.
std::vector<Window> windows(int hours, int length);

}  // namespace boostmg
