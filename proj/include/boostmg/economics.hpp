#pragma once

// Investment annualization and total-cost / LCOE accounting.

#include "boostmg/dispatch.hpp"

namespace boostmg {

struct CostModel {
  double pv_capex_per_kw = 900.0;
  double batt_capex_per_kwh = 300.0;
  double discount_rate = 0.05;  // per year
  int pv_lifetime_yr = 25;
  int batt_lifetime_yr = 10;

  void validate() const;
};

struct CostBreakdown {
  double op_cost = 0.0;        // $/yr
  double inv_pv = 0.0;         // $/yr
  double inv_batt = 0.0;       // $/yr
  double total = 0.0;          // $/yr, exactly op_cost + inv_pv + inv_batt
  double lcoe_cents = 0.0;     // cents/kWh
  double energy_served = 0.0;  // kWh/yr
};

// Capital recovery: capex * r(1+r)^n / ((1+r)^n - 1); the r -> 0 limit is
// capex / n and r == 0 is handled exactly that way.
double annuity(double capex_total, double rate, int years);

CostBreakdown total_cost(const Design& design, double annual_op_cost,
                         double energy_served_kwh, const CostModel& cm);

}  // namespace boostmg
