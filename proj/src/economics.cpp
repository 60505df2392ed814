#include "boostmg/economics.hpp"

#include <cmath>
#include <stdexcept>

namespace boostmg {

void CostModel::validate() const {
  if (pv_capex_per_kw < 0.0 || batt_capex_per_kwh < 0.0)
    throw std::invalid_argument("cost model: negative capex");
  if (!(discount_rate >= 0.0) || discount_rate >= 1.0)
    throw std::invalid_argument("cost model: discount rate outside [0,1)");
  if (pv_lifetime_yr < 1 || batt_lifetime_yr < 1)
    throw std::invalid_argument("cost model: lifetimes must be >= 1 year");
}

double annuity(double capex_total, double rate, int years) {
  if (years < 1) throw std::invalid_argument("annuity: years must be >= 1");
  if (!(rate >= 0.0)) throw std::invalid_argument("annuity: negative rate");
  if (capex_total == 0.0) return 0.0;
  if (rate == 0.0) return capex_total / years;
  // (1+r)^n via expm1/log1p keeps tiny rates stable
  const double growth = std::expm1(years * std::log1p(rate));  // (1+r)^n - 1
  return capex_total * rate * (growth + 1.0) / growth;
}

CostBreakdown total_cost(const Design& design, double annual_op_cost,
                         double energy_served_kwh, const CostModel& cm) {
  design.validate();
  cm.validate();
  if (!std::isfinite(annual_op_cost) || annual_op_cost < 0.0)
    throw std::invalid_argument("total_cost: bad operational cost");
  if (!(energy_served_kwh > 0.0))
    throw std::invalid_argument("total_cost: LCOE undefined, no energy served");
  CostBreakdown cb;
  cb.op_cost = annual_op_cost;
  cb.inv_pv = annuity(cm.pv_capex_per_kw * design.pv_kw, cm.discount_rate,
                      cm.pv_lifetime_yr);
  cb.inv_batt = annuity(cm.batt_capex_per_kwh * design.battery_kwh,
                        cm.discount_rate, cm.batt_lifetime_yr);
  cb.total = cb.op_cost + cb.inv_pv + cb.inv_batt;
  cb.energy_served = energy_served_kwh;
  cb.lcoe_cents = 100.0 * cb.total / cb.energy_served;
  return cb;
}

}  // namespace boostmg
