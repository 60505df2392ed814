#pragma once

// Weekly dispatch problem construction. build_lp emits the continuous
// dispatch model (grid, diesel, PV, battery charge/discharge, SOC chain);
// build_milp adds per-hour binary diesel commitment with min/max linking
// rows. extract_solution maps a solver point back to named series, removes
// degenerate simultaneous charge/discharge, and asserts the physical
// invariants.

#include <cstdint>
#include <vector>

#include "boostmg/model.hpp"
#include "boostmg/simplex.hpp"
#include "boostmg/trace.hpp"

namespace boostmg {

struct Design {
  double battery_kwh = 0.0;  // E_B
  double pv_kw = 0.0;        // PV nameplate

  void validate() const;
};

struct DispatchParams {
  double diesel_price = 0.30;  // $/kWh, constant unless a series is given
  std::vector<double> diesel_price_hourly;  // optional, indexed by trace hour
  double diesel_max_kw = 0.0;
  double diesel_min_kw = 0.0;  // commitment floor used by the accurate model
  double eta_charge = 0.95;
  double eta_discharge = 0.95;
  double soc_min_frac = 0.1;
  double soc_max_frac = 1.0;
  double soc_init_frac = 0.5;
  double battery_c_rate = 0.0;  // max power as multiple of capacity; 0 = none

  void validate() const;
};

struct DispatchProblem {
  Design design;
  DispatchParams params;
  std::vector<double> load_kw;
  std::vector<double> grid_price;
  std::vector<double> pv_availability;
  std::vector<double> diesel_price;  // resolved per window hour
  double soc_start = 0.0;

  int horizon() const { return static_cast<int>(load_kw.size()); }
  double soc_min() const { return params.soc_min_frac * design.battery_kwh; }
  double soc_max() const { return params.soc_max_frac * design.battery_kwh; }
  // per-hour battery power cap from the C-rate, infinite when unset
  double battery_power_cap() const;

  void validate() const;
};

DispatchProblem make_problem(const HourlyTrace& trace, const Window& window,
                             const DispatchParams& params, const Design& design,
                             double soc_start);

// initial SOC for the first window
double initial_soc(const DispatchParams& params, const Design& design);

// Column/row layout shared by the builders and the extractor. Hours where
// the grid is strictly cheaper than diesel can never run the generator at an
// optimum (the grid is unbounded and interchangeable in the balance), so
// those hours get a zero diesel bound and, in the accurate model, no
// commitment binary or linking rows.
struct DispatchLayout {
  int T = 0;
  bool milp = false;
  std::vector<int> commit_hours;    // hours carrying a commitment binary
  std::vector<int> commit_of_hour;  // hour -> index into commit_hours, or -1

  int grid(int t) const { return t; }
  int diesel(int t) const { return T + t; }
  int pv(int t) const { return 2 * T + t; }
  int charge(int t) const { return 3 * T + t; }
  int discharge(int t) const { return 4 * T + t; }
  int soc(int t) const { return 5 * T + t; }  // t in [0, T]
  int num_commits() const { return static_cast<int>(commit_hours.size()); }
  int commit(int t) const { return 6 * T + 1 + commit_of_hour[t]; }
  int slack_min(int t) const {
    return 6 * T + 1 + num_commits() + commit_of_hour[t];
  }
  int slack_max(int t) const {
    return 6 * T + 1 + 2 * num_commits() + commit_of_hour[t];
  }
  bool has_commit(int t) const { return milp && commit_of_hour[t] >= 0; }
  int num_vars() const { return 6 * T + 1 + (milp ? 3 * num_commits() : 0); }

  int row_balance(int t) const { return t; }
  int row_soc(int t) const { return T + t; }
  int row_min(int t) const { return 2 * T + commit_of_hour[t]; }
  int row_max(int t) const { return 2 * T + num_commits() + commit_of_hour[t]; }
};

struct DispatchModel {
  StandardFormModel model;
  DispatchLayout layout;
  Basis warm;  // all-grid triangular basis, primal feasible at root bounds
};

DispatchModel build_lp(const DispatchProblem& problem);
DispatchModel build_milp(const DispatchProblem& problem);

struct DispatchSolution {
  std::vector<double> grid_kw;
  std::vector<double> diesel_kw;
  std::vector<double> pv_kw;
  std::vector<double> charge_kw;
  std::vector<double> discharge_kw;
  std::vector<double> soc_kwh;          // length T+1
  std::vector<std::uint8_t> diesel_on;  // accurate model only, else empty
  double op_cost = 0.0;
  SolveStatus status = SolveStatus::kOptimal;
};

DispatchSolution extract_solution(const DispatchModel& dm, const SolveReport& raw,
                                  const DispatchProblem& problem);

// Throws std::runtime_error when the schedule violates power balance, SOC
// dynamics, bounds, or the no-simultaneous-flow condition beyond tolerance.
void check_solution(const DispatchSolution& s, const DispatchProblem& p,
                    bool enforce_commitment);

// Cheapest feasible source mix for a required supply at one hour: PV is
// free up to its cap, the remainder comes from grid and/or diesel with the
// commitment floor handled by explicit on/off enumeration.
struct SourceMix {
  bool feasible = false;
  double pv = 0.0;
  double grid = 0.0;
  double diesel = 0.0;
  bool diesel_on = false;
  double cost = 0.0;
};

SourceMix cheapest_supply(double required_kw, double pv_cap_kw,
                          double grid_price, double diesel_price,
                          double diesel_min_kw, double diesel_max_kw);

}  // namespace boostmg
