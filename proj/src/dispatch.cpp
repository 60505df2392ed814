#include "boostmg/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace boostmg {

void Design::validate() const {
  if (!(battery_kwh >= 0.0) || !std::isfinite(battery_kwh))
    throw std::invalid_argument("design: battery capacity must be >= 0");
  if (!(pv_kw >= 0.0) || !std::isfinite(pv_kw))
    throw std::invalid_argument("design: pv size must be >= 0");
}

void DispatchParams::validate() const {
  if (!(diesel_price >= 0.0)) throw std::invalid_argument("params: diesel price < 0");
  if (!(diesel_max_kw >= 0.0)) throw std::invalid_argument("params: diesel max < 0");
  if (diesel_min_kw < 0.0 || diesel_min_kw > diesel_max_kw)
    throw std::invalid_argument("params: need 0 <= diesel min <= diesel max");
  if (!(eta_charge > 0.0) || eta_charge > 1.0)
    throw std::invalid_argument("params: charge efficiency outside (0,1]");
  if (!(eta_discharge > 0.0) || eta_discharge > 1.0)
    throw std::invalid_argument("params: discharge efficiency outside (0,1]");
  if (soc_min_frac < 0.0 || !(soc_min_frac < soc_max_frac) || soc_max_frac > 1.0)
    throw std::invalid_argument("params: need 0 <= soc min frac < soc max frac <= 1");
  if (soc_init_frac < soc_min_frac || soc_init_frac > soc_max_frac)
    throw std::invalid_argument("params: initial soc fraction outside [min,max]");
  if (battery_c_rate < 0.0)
    throw std::invalid_argument("params: battery c-rate < 0");
  for (double p : diesel_price_hourly)
    if (!(p >= 0.0) || !std::isfinite(p))
      throw std::invalid_argument("params: bad hourly diesel price");
}

double DispatchProblem::battery_power_cap() const {
  return params.battery_c_rate > 0.0
             ? params.battery_c_rate * design.battery_kwh
             : kInf;
}

void DispatchProblem::validate() const {
  design.validate();
  params.validate();
  const std::size_t T = load_kw.size();
  if (T == 0) throw std::invalid_argument("problem: empty horizon");
  if (grid_price.size() != T || pv_availability.size() != T ||
      diesel_price.size() != T)
    throw std::invalid_argument("problem: series lengths disagree");
  if (design.battery_kwh > 0.0) {
    if (soc_start < soc_min() - 1e-9 || soc_start > soc_max() + 1e-9)
      throw std::invalid_argument("problem: starting SOC outside bounds");
  } else if (std::fabs(soc_start) > 1e-9) {
    throw std::invalid_argument("problem: nonzero SOC with no battery");
  }
}

double initial_soc(const DispatchParams& params, const Design& design) {
  return params.soc_init_frac * design.battery_kwh;
}

DispatchProblem make_problem(const HourlyTrace& trace, const Window& window,
                             const DispatchParams& params, const Design& design,
                             double soc_start) {
  if (window.start < 0 || window.length < 1 ||
      window.start + window.length > trace.hours())
    throw std::invalid_argument("problem: window outside trace");
  if (!params.diesel_price_hourly.empty() &&
      static_cast<int>(params.diesel_price_hourly.size()) < trace.hours())
    throw std::invalid_argument("problem: hourly diesel price series too short");
  DispatchProblem p;
  p.design = design;
  p.params = params;
  const auto b = window.start;
  const auto e = window.start + window.length;
  p.load_kw.assign(trace.load_kw.begin() + b, trace.load_kw.begin() + e);
  p.grid_price.assign(trace.grid_price.begin() + b, trace.grid_price.begin() + e);
  p.pv_availability.assign(trace.pv_availability.begin() + b,
                           trace.pv_availability.begin() + e);
  p.diesel_price.resize(window.length);
  for (int t = 0; t < window.length; ++t)
    p.diesel_price[t] = params.diesel_price_hourly.empty()
                            ? params.diesel_price
                            : params.diesel_price_hourly[b + t];
  p.soc_start = soc_start;
  p.validate();
  return p;
}

namespace {

DispatchModel build(const DispatchProblem& p, bool milp) {
  p.validate();
  const int T = p.horizon();
  DispatchLayout lay;
  lay.T = T;
  lay.milp = milp;
  lay.commit_of_hour.assign(T, -1);
  const double dmax = p.params.diesel_max_kw;
  const double dmin = p.params.diesel_min_kw;
  // diesel can pay off only where it undercuts the grid
  std::vector<bool> diesel_possible(T);
  for (int t = 0; t < T; ++t) {
    diesel_possible[t] = dmax > 0.0 && p.diesel_price[t] < p.grid_price[t];
    if (milp && diesel_possible[t]) {
      lay.commit_of_hour[t] = static_cast<int>(lay.commit_hours.size());
      lay.commit_hours.push_back(t);
    }
  }

  ModelBuilder b;
  const double pcap = p.battery_power_cap();
  for (int t = 0; t < T; ++t)
    b.add_var("grid" + std::to_string(t), 0.0, kInf, p.grid_price[t]);
  for (int t = 0; t < T; ++t)
    b.add_var("dsl" + std::to_string(t), 0.0, diesel_possible[t] ? dmax : 0.0,
              p.diesel_price[t]);
  for (int t = 0; t < T; ++t)
    b.add_var("pv" + std::to_string(t), 0.0,
              p.pv_availability[t] * p.design.pv_kw, 0.0);
  for (int t = 0; t < T; ++t)
    b.add_var("ch" + std::to_string(t), 0.0, pcap, 0.0);
  for (int t = 0; t < T; ++t)
    b.add_var("dis" + std::to_string(t), 0.0, pcap, 0.0);
  b.add_var("soc0", p.soc_start, p.soc_start, 0.0);
  for (int t = 1; t <= T; ++t)
    b.add_var("soc" + std::to_string(t), p.soc_min(), p.soc_max(), 0.0);
  if (milp) {
    for (int t : lay.commit_hours)
      b.add_var("u" + std::to_string(t), 0.0, 1.0, 0.0, true);
    for (int t : lay.commit_hours)
      b.add_var("smin" + std::to_string(t), 0.0, kInf, 0.0);
    for (int t : lay.commit_hours)
      b.add_var("smax" + std::to_string(t), 0.0, kInf, 0.0);
  }

  for (int t = 0; t < T; ++t) {
    const int r = b.add_row(p.load_kw[t]);  // power balance
    b.set_coef(r, lay.pv(t), 1.0);
    b.set_coef(r, lay.diesel(t), 1.0);
    b.set_coef(r, lay.grid(t), 1.0);
    b.set_coef(r, lay.discharge(t), 1.0);
    b.set_coef(r, lay.charge(t), -1.0);
  }
  for (int t = 0; t < T; ++t) {  // SOC dynamics, 1-hour timestep
    const int r = b.add_row(0.0);
    b.set_coef(r, lay.soc(t + 1), 1.0);
    b.set_coef(r, lay.soc(t), -1.0);
    b.set_coef(r, lay.charge(t), -p.params.eta_charge);
    b.set_coef(r, lay.discharge(t), 1.0 / p.params.eta_discharge);
  }
  if (milp) {
    for (int t : lay.commit_hours) {  // diesel >= min when committed
      const int r = b.add_row(0.0);
      b.set_coef(r, lay.diesel(t), 1.0);
      b.set_coef(r, lay.commit(t), -dmin);
      b.set_coef(r, lay.slack_min(t), -1.0);
    }
    for (int t : lay.commit_hours) {  // diesel <= max * commitment
      const int r = b.add_row(0.0);
      b.set_coef(r, lay.commit(t), dmax);
      b.set_coef(r, lay.diesel(t), -1.0);
      b.set_coef(r, lay.slack_max(t), -1.0);
    }
  }

  DispatchModel dm;
  dm.model = b.build();
  dm.layout = lay;
  // all-grid start: grid covers load, SOC stays flat, slacks sit at zero
  dm.warm.basic.reserve(dm.model.num_rows());
  for (int t = 0; t < T; ++t) dm.warm.basic.push_back(lay.grid(t));
  for (int t = 0; t < T; ++t) dm.warm.basic.push_back(lay.soc(t + 1));
  if (milp) {
    for (int t : lay.commit_hours) dm.warm.basic.push_back(lay.slack_min(t));
    for (int t : lay.commit_hours) dm.warm.basic.push_back(lay.slack_max(t));
  }
  return dm;
}

}  // namespace

DispatchModel build_lp(const DispatchProblem& p) { return build(p, false); }
DispatchModel build_milp(const DispatchProblem& p) { return build(p, true); }

SourceMix cheapest_supply(double required_kw, double pv_cap_kw,
                          double grid_price, double diesel_price,
                          double diesel_min_kw, double diesel_max_kw) {
  SourceMix mix;
  if (required_kw < 0.0) {
    if (required_kw < -1e-9) return mix;  // nothing can absorb surplus
    required_kw = 0.0;
  }
  mix.feasible = true;
  mix.pv = std::min(required_kw, std::max(pv_cap_kw, 0.0));
  const double rest = required_kw - mix.pv;
  // diesel off
  double best = rest * grid_price;
  double best_diesel = 0.0;
  bool best_on = false;
  // diesel on: power in [min, min(max, rest)], cost linear -> endpoint
  const double hi = std::min(diesel_max_kw, rest);
  if (hi >= diesel_min_kw && hi > 0.0) {
    const double d = diesel_price < grid_price ? hi : diesel_min_kw;
    const double cost = d * diesel_price + (rest - d) * grid_price;
    if (cost < best - 1e-15) {
      best = cost;
      best_diesel = d;
      best_on = true;
    }
  }
  mix.diesel = best_diesel;
  mix.diesel_on = best_on;
  mix.grid = rest - best_diesel;
  mix.cost = best;
  return mix;
}

namespace {

void snap_nonneg(double& v) {
  if (v < 0.0 && v > -1e-9) v = 0.0;
}

}  // namespace

DispatchSolution extract_solution(const DispatchModel& dm, const SolveReport& raw,
                                  const DispatchProblem& p) {
  if (raw.status != SolveStatus::kOptimal)
    throw std::runtime_error("extract_solution: solver status is not optimal");
  const DispatchLayout& lay = dm.layout;
  const int T = lay.T;
  DispatchSolution s;
  s.status = SolveStatus::kOptimal;
  s.grid_kw.resize(T);
  s.diesel_kw.resize(T);
  s.pv_kw.resize(T);
  s.charge_kw.resize(T);
  s.discharge_kw.resize(T);
  s.soc_kwh.resize(T + 1);
  if (lay.milp) s.diesel_on.resize(T);

  const double ee = p.params.eta_charge * p.params.eta_discharge;
  for (int t = 0; t < T; ++t) {
    double grid = raw.x[lay.grid(t)];
    double dsl = raw.x[lay.diesel(t)];
    double pv = raw.x[lay.pv(t)];
    double ch = raw.x[lay.charge(t)];
    double dis = raw.x[lay.discharge(t)];
    snap_nonneg(grid);
    snap_nonneg(dsl);
    snap_nonneg(pv);
    snap_nonneg(ch);
    snap_nonneg(dis);
    const bool on = lay.has_commit(t) && raw.x[lay.commit(t)] >= 0.5;

    if (ch > 0.0 && dis > 0.0) {
      // transfer the overlap out; SOC path is unchanged and the freed
      // balance surplus is absorbed by curtailment first
      const double dc = std::min(ch, dis / ee);
      const double dd = ee * dc;
      ch -= dc;
      dis -= dd;
      double surplus = dc - dd;  // = dc * (1 - ee)
      const double from_pv = std::min(pv, surplus);
      pv -= from_pv;
      surplus -= from_pv;
      const double from_grid = std::min(grid, surplus);
      grid -= from_grid;
      surplus -= from_grid;
      const double diesel_floor = on ? p.params.diesel_min_kw : 0.0;
      const double from_dsl = std::min(std::max(dsl - diesel_floor, 0.0), surplus);
      dsl -= from_dsl;
      surplus -= from_dsl;
      if (surplus > 1e-7)
        throw std::runtime_error(
            "extract_solution: cannot absorb simultaneous-flow surplus at hour " +
            std::to_string(t));
      if (std::min(ch, dis) > 0.0) {
        if (ch <= dis) ch = 0.0; else dis = 0.0;
      }
    }

    s.grid_kw[t] = grid;
    s.diesel_kw[t] = dsl;
    s.pv_kw[t] = pv;
    s.charge_kw[t] = ch;
    s.discharge_kw[t] = dis;
    if (lay.milp) s.diesel_on[t] = on ? 1 : 0;
  }

  // rebuild SOC from flows so the recursion holds exactly
  s.soc_kwh[0] = p.soc_start;
  for (int t = 0; t < T; ++t)
    s.soc_kwh[t + 1] = s.soc_kwh[t] + p.params.eta_charge * s.charge_kw[t] -
                       s.discharge_kw[t] / p.params.eta_discharge;
  for (int t = 1; t <= T; ++t) {
    if (std::fabs(s.soc_kwh[t] - raw.x[lay.soc(t)]) > 1e-6)
      throw std::runtime_error(
          "extract_solution: SOC recursion drifted from solver point at hour " +
          std::to_string(t));
  }

  double cost = 0.0;
  for (int t = 0; t < T; ++t)
    cost += p.grid_price[t] * s.grid_kw[t] + p.diesel_price[t] * s.diesel_kw[t];
  if (std::fabs(cost - raw.objective) > 1e-6 * (1.0 + std::fabs(raw.objective)))
    throw std::runtime_error("extract_solution: cleanup changed the cost");
  s.op_cost = cost;

  check_solution(s, p, lay.milp);
  return s;
}

void check_solution(const DispatchSolution& s, const DispatchProblem& p,
                    bool enforce_commitment) {
  const int T = p.horizon();
  const auto fail = [](const std::string& what, int t) {
    throw std::runtime_error("dispatch solution violates " + what + " at hour " +
                             std::to_string(t));
  };
  if (static_cast<int>(s.soc_kwh.size()) != T + 1) fail("SOC length", 0);
  const double pcap = p.battery_power_cap();
  for (int t = 0; t < T; ++t) {
    const double bal = s.pv_kw[t] + s.diesel_kw[t] + s.grid_kw[t] +
                       s.discharge_kw[t] - p.load_kw[t] - s.charge_kw[t];
    if (std::fabs(bal) > 1e-6 * std::max(1.0, p.load_kw[t]))
      fail("power balance", t);
    if (s.grid_kw[t] < -1e-9) fail("grid bound", t);
    if (s.pv_kw[t] < -1e-9 ||
        s.pv_kw[t] > p.pv_availability[t] * p.design.pv_kw + 1e-6)
      fail("pv bound", t);
    if (s.charge_kw[t] < -1e-9 || s.charge_kw[t] > pcap + 1e-6)
      fail("charge bound", t);
    if (s.discharge_kw[t] < -1e-9 || s.discharge_kw[t] > pcap + 1e-6)
      fail("discharge bound", t);
    if (std::min(s.charge_kw[t], s.discharge_kw[t]) != 0.0)
      fail("no-simultaneous-flow", t);
    const double expect = s.soc_kwh[t] + p.params.eta_charge * s.charge_kw[t] -
                          s.discharge_kw[t] / p.params.eta_discharge;
    if (std::fabs(expect - s.soc_kwh[t + 1]) > 1e-6) fail("SOC dynamics", t);
    if (s.diesel_kw[t] < -1e-9 || s.diesel_kw[t] > p.params.diesel_max_kw + 1e-6)
      fail("diesel capacity", t);
    if (enforce_commitment) {
      const bool on = !s.diesel_on.empty() && s.diesel_on[t] != 0;
      const double lo = on ? p.params.diesel_min_kw : 0.0;
      const double hi = on ? p.params.diesel_max_kw : 0.0;
      if (s.diesel_kw[t] < lo - 1e-6 || s.diesel_kw[t] > hi + 1e-6)
        fail("diesel commitment", t);
    }
  }
  for (int t = 1; t <= T; ++t) {
    if (s.soc_kwh[t] < p.soc_min() - 1e-6 || s.soc_kwh[t] > p.soc_max() + 1e-6)
      fail("SOC bounds", t);
  }
}

}  // namespace boostmg
