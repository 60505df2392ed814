#include "boostmg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace boostmg {

namespace {

struct Search {
  const DispatchProblem& p;
  std::vector<double> decisions;  // battery net power, >0 charge, <0 discharge
  double best = std::numeric_limits<double>::infinity();

  void dfs(int t, double soc, double cost) {
    if (cost >= best) return;
    if (t == p.horizon()) {
      best = cost;
      return;
    }
    const double cap = p.battery_power_cap();
    for (double d : decisions) {
      double soc_next = soc;
      double required = p.load_kw[t];
      if (d > 0.0) {  // charge
        if (d > cap + 1e-12) continue;
        soc_next = soc + p.params.eta_charge * d;
        if (soc_next > p.soc_max() + 1e-9) continue;
        required += d;
      } else if (d < 0.0) {  // discharge
        const double dis = -d;
        if (dis > cap + 1e-12) continue;
        if (dis > p.load_kw[t] + 1e-12) continue;  // no export
        soc_next = soc - dis / p.params.eta_discharge;
        if (soc_next < p.soc_min() - 1e-9) continue;
        required -= dis;
      }
      const SourceMix mix = cheapest_supply(
          required, p.pv_availability[t] * p.design.pv_kw, p.grid_price[t],
          p.diesel_price[t], p.params.diesel_min_kw, p.params.diesel_max_kw);
      if (!mix.feasible) continue;
      dfs(t + 1, soc_next, cost + mix.cost);
    }
  }
};

}  // namespace

double oracle_dispatch(const DispatchProblem& p, int grid_points) {
  p.validate();
  if (p.horizon() > 6)
    throw std::invalid_argument("oracle_dispatch: horizon above desk scale (6)");
  if (grid_points < 2 || grid_points > 21)
    throw std::invalid_argument("oracle_dispatch: grid_points outside [2,21]");

  // decision range: what the battery could ever absorb or deliver in an hour
  const double span = p.soc_max() - p.soc_min();
  const double cap = p.battery_power_cap();
  double load_max = 0.0;
  for (double l : p.load_kw) load_max = std::max(load_max, l);
  const double hi = std::min(span / p.params.eta_charge, cap);
  const double lo = -std::min({span * p.params.eta_discharge, cap, load_max});

  Search s{p, {}, std::numeric_limits<double>::infinity()};
  if (hi <= lo + 1e-12) {
    s.decisions = {0.0};
  } else {
    s.decisions.resize(grid_points);
    for (int i = 0; i < grid_points; ++i)
      s.decisions[i] = lo + (hi - lo) * i / (grid_points - 1);
    // make "do nothing" exactly representable
    int nearest = 0;
    for (int i = 1; i < grid_points; ++i)
      if (std::fabs(s.decisions[i]) < std::fabs(s.decisions[nearest])) nearest = i;
    s.decisions[nearest] = 0.0;
    std::sort(s.decisions.begin(), s.decisions.end());
    s.decisions.erase(std::unique(s.decisions.begin(), s.decisions.end()),
                      s.decisions.end());
  }

  s.dfs(0, p.soc_start, 0.0);
  if (!std::isfinite(s.best))
    throw std::runtime_error("oracle_dispatch: no feasible path found");
  return s.best;
}

}  // namespace boostmg
