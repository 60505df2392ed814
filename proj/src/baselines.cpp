#include "boostmg/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace boostmg {

namespace {

constexpr double kBig = std::numeric_limits<double>::infinity();

struct Transition {
  bool ok = false;
  double charge = 0.0;
  double discharge = 0.0;
  SourceMix mix;
};

Transition make_transition(const DispatchProblem& p, int t, double soc_from,
                           double soc_to) {
  Transition tr;
  const double e = soc_to - soc_from;
  const double cap = p.battery_power_cap();
  double required = p.load_kw[t];
  if (e >= 0.0) {
    tr.charge = e / p.params.eta_charge;
    if (tr.charge > cap + 1e-12) return tr;
    required += tr.charge;
  } else {
    tr.discharge = -e * p.params.eta_discharge;
    if (tr.discharge > cap + 1e-12) return tr;
    required -= tr.discharge;
    if (required < -1e-12) return tr;  // no export
    if (required < 0.0) required = 0.0;
  }
  tr.mix = cheapest_supply(required, p.pv_availability[t] * p.design.pv_kw,
                           p.grid_price[t], p.diesel_price[t],
                           p.params.diesel_min_kw, p.params.diesel_max_kw);
  tr.ok = tr.mix.feasible;
  return tr;
}

void fill_hour(DispatchSolution& s, int t, const Transition& tr) {
  s.charge_kw[t] = tr.charge;
  s.discharge_kw[t] = tr.discharge;
  s.pv_kw[t] = tr.mix.pv;
  s.grid_kw[t] = tr.mix.grid;
  s.diesel_kw[t] = tr.mix.diesel;
  s.diesel_on[t] = tr.mix.diesel_on ? 1 : 0;
  s.op_cost += tr.mix.cost;
}

DispatchSolution blank_solution(int T) {
  DispatchSolution s;
  s.grid_kw.assign(T, 0.0);
  s.diesel_kw.assign(T, 0.0);
  s.pv_kw.assign(T, 0.0);
  s.charge_kw.assign(T, 0.0);
  s.discharge_kw.assign(T, 0.0);
  s.soc_kwh.assign(T + 1, 0.0);
  s.diesel_on.assign(T, 0);
  s.op_cost = 0.0;
  return s;
}

}  // namespace

DispatchSolution dp_dispatch(const DispatchProblem& p, const DPConfig& cfg) {
  p.validate();
  if (cfg.soc_levels < 2)
    throw std::invalid_argument("dp_dispatch: need at least 2 SOC levels");
  const int T = p.horizon();
  const double lo = p.soc_min();
  const double hi = p.soc_max();
  const int L = hi - lo > 1e-12 ? cfg.soc_levels : 1;
  std::vector<double> grid(L);
  for (int i = 0; i < L; ++i)
    grid[i] = L == 1 ? lo : lo + (hi - lo) * i / (L - 1);

  // value[t][i]: cheapest cost of hours t..T-1 starting at grid level i
  std::vector<std::vector<double>> value(T + 1, std::vector<double>(L, kBig));
  std::vector<std::vector<int>> choice(T, std::vector<int>(L, -1));
  for (int i = 0; i < L; ++i) value[T][i] = 0.0;
  for (int t = T - 1; t >= 1; --t) {
    for (int i = 0; i < L; ++i) {
      for (int j = 0; j < L; ++j) {
        if (value[t + 1][j] == kBig) continue;
        const Transition tr = make_transition(p, t, grid[i], grid[j]);
        if (!tr.ok) continue;
        const double c = tr.mix.cost + value[t + 1][j];
        if (c < value[t][i]) {
          value[t][i] = c;
          choice[t][i] = j;
        }
      }
    }
  }
  // stage 0 from the exact incoming SOC
  double best = kBig;
  int first = -1;
  for (int j = 0; j < L; ++j) {
    const double tail = T == 1 ? 0.0 : value[1][j];
    if (tail == kBig) continue;
    const Transition tr = make_transition(p, 0, p.soc_start, grid[j]);
    if (!tr.ok) continue;
    const double c = tr.mix.cost + tail;
    if (c < best) {
      best = c;
      first = j;
    }
  }
  DispatchSolution s = blank_solution(T);
  if (first < 0) {
    s.status = SolveStatus::kInfeasible;
    return s;
  }

  s.soc_kwh[0] = p.soc_start;
  int level = first;
  {
    const Transition tr = make_transition(p, 0, p.soc_start, grid[first]);
    fill_hour(s, 0, tr);
    s.soc_kwh[1] = grid[first];
  }
  for (int t = 1; t < T; ++t) {
    const int next = choice[t][level];
    if (next < 0) {
      s.status = SolveStatus::kInfeasible;
      return s;
    }
    const Transition tr = make_transition(p, t, grid[level], grid[next]);
    fill_hour(s, t, tr);
    s.soc_kwh[t + 1] = grid[next];
    level = next;
  }
  s.status = SolveStatus::kOptimal;
  check_solution(s, p, true);
  return s;
}

DispatchSolution greedy_dispatch(const DispatchProblem& p) {
  p.validate();
  const int T = p.horizon();
  const double cap = p.battery_power_cap();
  DispatchSolution s = blank_solution(T);
  double soc = p.soc_start;
  s.soc_kwh[0] = soc;
  for (int t = 0; t < T; ++t) {
    const double pv_cap = p.pv_availability[t] * p.design.pv_kw;
    const double pv_to_load = std::min(p.load_kw[t], pv_cap);
    double deficit = p.load_kw[t] - pv_to_load;
    double pv_used = pv_to_load;

    const double surplus = pv_cap - pv_to_load;
    if (surplus > 0.0) {
      const double headroom = (p.soc_max() - soc) / p.params.eta_charge;
      const double ch = std::min({surplus, headroom, cap});
      if (ch > 0.0) {
        s.charge_kw[t] = ch;
        pv_used += ch;
        soc += p.params.eta_charge * ch;
      }
    } else if (deficit > 0.0) {
      const double avail = (soc - p.soc_min()) * p.params.eta_discharge;
      const double dis = std::min({deficit, avail, cap});
      if (dis > 0.0) {
        s.discharge_kw[t] = dis;
        deficit -= dis;
        soc -= dis / p.params.eta_discharge;
      }
    }

    if (deficit > 1e-12) {
      if (deficit >= p.params.diesel_min_kw &&
          p.diesel_price[t] < p.grid_price[t]) {
        s.diesel_kw[t] = std::min(deficit, p.params.diesel_max_kw);
        s.diesel_on[t] = s.diesel_kw[t] > 0.0 ? 1 : 0;
        deficit -= s.diesel_kw[t];
      }
      s.grid_kw[t] = std::max(deficit, 0.0);
    }
    s.pv_kw[t] = pv_used;
    s.soc_kwh[t + 1] = soc;
    s.op_cost += p.grid_price[t] * s.grid_kw[t] + p.diesel_price[t] * s.diesel_kw[t];
  }
  s.status = SolveStatus::kOptimal;
  check_solution(s, p, true);
  return s;
}

}  // namespace boostmg
