#pragma once

// Shared helpers for the test suites: seeded random dispatch instances and
// the explicit diesel-commitment enumeration oracle used to certify the
// branch-and-bound solver.

#include <limits>
#include <random>
#include <vector>

#include "boostmg/dispatch.hpp"
#include "boostmg/simplex.hpp"

namespace testsup {

inline double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct InstanceKnobs {
  int horizon = 4;
  bool allow_battery = true;
  bool allow_pv = true;
  bool allow_min_power = true;  // diesel commitment floor
  double load_lo = 30.0;
  double load_hi = 120.0;
  double battery_hi = 400.0;
};

inline boostmg::DispatchProblem random_problem(std::mt19937_64& rng,
                                               const InstanceKnobs& k = {}) {
  using boostmg::DispatchProblem;
  DispatchProblem p;
  const int T = k.horizon;
  p.design.battery_kwh =
      k.allow_battery && unit(rng) > 0.25
          ? 20.0 + (k.battery_hi - 20.0) * unit(rng)
          : 0.0;
  p.design.pv_kw = k.allow_pv && unit(rng) > 0.25 ? 20.0 + 180.0 * unit(rng) : 0.0;
  p.params.eta_charge = 0.85 + 0.15 * unit(rng);
  p.params.eta_discharge = 0.85 + 0.15 * unit(rng);
  p.params.soc_min_frac = 0.1;
  p.params.soc_max_frac = 1.0;
  p.params.soc_init_frac = 0.2 + 0.6 * unit(rng);
  p.params.diesel_price = 0.18 + 0.17 * unit(rng);
  p.params.diesel_max_kw = 30.0 + 70.0 * unit(rng);
  p.params.diesel_min_kw = k.allow_min_power && unit(rng) > 0.3
                               ? (0.2 + 0.4 * unit(rng)) * p.params.diesel_max_kw
                               : 0.0;
  p.params.battery_c_rate = unit(rng) > 0.8 ? 0.5 + 1.5 * unit(rng) : 0.0;
  p.load_kw.resize(T);
  p.grid_price.resize(T);
  p.pv_availability.resize(T);
  p.diesel_price.assign(T, p.params.diesel_price);
  for (int t = 0; t < T; ++t) {
    p.load_kw[t] = k.load_lo + (k.load_hi - k.load_lo) * unit(rng);
    p.grid_price[t] = unit(rng) < 0.6 ? 0.08 + 0.08 * unit(rng)
                                      : 0.25 + 0.17 * unit(rng);
    p.pv_availability[t] = unit(rng) < 0.4 ? 0.0 : unit(rng);
  }
  p.soc_start = p.params.soc_init_frac * p.design.battery_kwh;
  p.validate();
  return p;
}

// Instances scaled so a 21-point battery grid stays within a small relative
// gap of the continuous optimum (battery small against the load).
inline boostmg::DispatchProblem random_problem_for_oracle(std::mt19937_64& rng,
                                                          int horizon) {
  InstanceKnobs k;
  k.horizon = horizon;
  k.load_lo = 90.0;
  k.load_hi = 200.0;
  k.battery_hi = 60.0;
  return random_problem(rng, k);
}

// Exact accurate-model optimum by enumerating every on/off pattern over the
// hours that carry a commitment binary and solving the remaining LP; the
// reference for solve_milp.
inline double enumerate_milp(const boostmg::DispatchProblem& p,
                             long* patterns_solved = nullptr) {
  const auto dm = boostmg::build_milp(p);
  const int commits = dm.layout.num_commits();
  double best = std::numeric_limits<double>::infinity();
  long solved = 0;
  for (long mask = 0; mask < (1L << commits); ++mask) {
    std::vector<double> lb = dm.model.lower;
    std::vector<double> ub = dm.model.upper;
    for (int k = 0; k < commits; ++k) {
      const double v = (mask >> k) & 1 ? 1.0 : 0.0;
      const int var = dm.layout.commit(dm.layout.commit_hours[k]);
      lb[var] = v;
      ub[var] = v;
    }
    const auto rep = boostmg::solve_lp_bounded(dm.model, lb, ub, {}, &dm.warm);
    if (rep.status == boostmg::SolveStatus::kOptimal) {
      ++solved;
      if (rep.objective < best) best = rep.objective;
    }
  }
  if (patterns_solved != nullptr) *patterns_solved = solved;
  return best;
}

}  // namespace testsup
