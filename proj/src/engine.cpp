#include "boostmg/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace boostmg {

const char* to_string(DispatchMethod m) {
  switch (m) {
    case DispatchMethod::kLp: return "lp";
    case DispatchMethod::kMilp: return "milp";
    case DispatchMethod::kDp: return "dp";
    case DispatchMethod::kGreedy: return "greedy";
  }
  return "unknown";
}

std::optional<DispatchMethod> dispatch_method_from(const std::string& name) {
  if (name == "lp") return DispatchMethod::kLp;
  if (name == "milp") return DispatchMethod::kMilp;
  if (name == "dp") return DispatchMethod::kDp;
  if (name == "greedy") return DispatchMethod::kGreedy;
  return std::nullopt;
}

namespace {

void append_window(DispatchSolution& year, const DispatchSolution& w) {
  const bool first = year.soc_kwh.empty();
  auto cat = [](std::vector<double>& a, const std::vector<double>& b) {
    a.insert(a.end(), b.begin(), b.end());
  };
  cat(year.grid_kw, w.grid_kw);
  cat(year.diesel_kw, w.diesel_kw);
  cat(year.pv_kw, w.pv_kw);
  cat(year.charge_kw, w.charge_kw);
  cat(year.discharge_kw, w.discharge_kw);
  year.diesel_on.insert(year.diesel_on.end(), w.diesel_on.begin(),
                        w.diesel_on.end());
  if (first) {
    year.soc_kwh = w.soc_kwh;
  } else {
    year.soc_kwh.insert(year.soc_kwh.end(), w.soc_kwh.begin() + 1,
                        w.soc_kwh.end());
  }
}

}  // namespace

YearEvalResult evaluate_year(const HourlyTrace& trace,
                             const DispatchParams& params, const Design& design,
                             DispatchMethod method, const EngineOptions& opts,
                             bool keep_schedule) {
  YearEvalResult out;
  double soc = initial_soc(params, design);
  const auto wins = windows(trace.hours(), opts.window_hours);
  try {
    for (std::size_t w = 0; w < wins.size(); ++w) {
      const DispatchProblem prob =
          make_problem(trace, wins[w], params, design, soc);
      DispatchSolution sol;
      switch (method) {
        case DispatchMethod::kLp: {
          const DispatchModel dm = build_lp(prob);
          const SolveReport rep = solve_lp(dm.model, opts.lp, &dm.warm);
          out.iterations += rep.iterations;
          if (rep.status != SolveStatus::kOptimal)
            throw std::runtime_error(std::string("lp solve: ") +
                                     to_string(rep.status));
          sol = extract_solution(dm, rep, prob);
          break;
        }
        case DispatchMethod::kMilp: {
          const DispatchModel dm = build_milp(prob);
          MilpOptions mo;
          mo.lp = opts.lp;
          mo.max_nodes = opts.milp_max_nodes;
          const SolveReport rep = solve_milp(dm.model, mo, &dm.warm);
          out.iterations += rep.iterations;
          out.nodes += rep.nodes;
          if (rep.status != SolveStatus::kOptimal)
            throw std::runtime_error(std::string("milp solve: ") +
                                     to_string(rep.status));
          sol = extract_solution(dm, rep, prob);
          break;
        }
        case DispatchMethod::kDp: {
          sol = dp_dispatch(prob, opts.dp);
          if (sol.status != SolveStatus::kOptimal)
            throw std::runtime_error("dp dispatch infeasible");
          break;
        }
        case DispatchMethod::kGreedy: {
          sol = greedy_dispatch(prob);
          break;
        }
      }
      out.op_cost += sol.op_cost;
      soc = sol.soc_kwh.back();
      if (keep_schedule) append_window(out.schedule, sol);
    }
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
    return out;
  }
  out.ok = true;
  return out;
}

OOPlan resolve_plan(OOPlan plan) {
  plan.n = plan.n_override > 0 ? plan.n_override
                               : compute_n(plan.confidence, plan.alpha);
  if (plan.n < 1) throw std::invalid_argument("plan: N must be >= 1");
  if (!(plan.good_fraction > 0.0) || plan.good_fraction > 1.0)
    throw std::invalid_argument("plan: good fraction outside (0,1]");
  plan.g = std::max(1, static_cast<int>(std::lround(plan.good_fraction * plan.n)));
  plan.g = std::min(plan.g, plan.n);
  if (plan.overlap_k < 1 || plan.overlap_k > plan.g)
    throw std::invalid_argument("plan: need 1 <= k <= g");
  plan.s = plan.s_override > 0
               ? std::min(plan.s_override, plan.n)
               : compute_s(plan.n, plan.g, plan.overlap_k, plan.ap_target);
  plan.s = std::max(plan.s, 1);
  plan.ap_achieved =
      alignment_probability(plan.n, plan.g, plan.s, plan.overlap_k);
  return plan;
}

namespace {

// Index-chunked parallel map; results land by index so the outcome does not
// depend on thread scheduling.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

bool design_less(const Design& a, const Design& b) {
  if (a.battery_kwh != b.battery_kwh) return a.battery_kwh < b.battery_kwh;
  return a.pv_kw < b.pv_kw;
}

}  // namespace

RankDiagnostics order_robustness_report(
    const std::vector<RankedDesign>& finalists) {
  if (finalists.size() < 2)
    throw std::invalid_argument("order_robustness_report: need >= 2 finalists");
  std::vector<int> r1, r2;
  r1.reserve(finalists.size());
  r2.reserve(finalists.size());
  RankDiagnostics d;
  int within = 0;
  for (const auto& f : finalists) {
    const int p1 = f.phase2_rank + f.order_gain;  // finalist phase-1 rank
    r1.push_back(p1);
    r2.push_back(f.phase2_rank);
    d.max_abs_gain = std::max(d.max_abs_gain, std::abs(f.order_gain));
    if (std::abs(f.order_gain) <= 2) ++within;
  }
  d.spearman = spearman_rho(r1, r2);
  d.kendall = kendall_tau(r1, r2);
  d.frac_gain_le2 = static_cast<double>(within) / finalists.size();
  return d;
}

BoostRun run_boost(const HourlyTrace& trace, const OOPlan& plan_in,
                   const DispatchParams& params, const CostModel& cm,
                   const std::vector<Design>& candidates,
                   const EngineOptions& opts) {
  trace.validate();
  params.validate();
  cm.validate();
  BoostRun run;
  run.plan = plan_in.n > 0 ? plan_in : resolve_plan(plan_in);
  run.energy_served_kwh = trace.total_load_kwh();
  if (candidates.empty())
    throw std::invalid_argument("run_boost: no candidate designs");

  const int count = static_cast<int>(candidates.size());
  std::vector<RankedDesign> all(count);
  std::vector<YearEvalResult> phase1(count);

  parallel_for(count, opts.jobs, [&](int i) {
    phase1[i] = evaluate_year(trace, params, candidates[i], DispatchMethod::kLp,
                              opts, false);
  });

  for (int i = 0; i < count; ++i) {
    all[i].design = candidates[i];
    if (!phase1[i].ok) {
      all[i].failed = true;
      all[i].error = phase1[i].error;
      run.warnings.push_back("design (" +
                             std::to_string(candidates[i].battery_kwh) + " kWh, " +
                             std::to_string(candidates[i].pv_kw) +
                             " kW) excluded: " + phase1[i].error);
      continue;
    }
    run.lp_iterations += phase1[i].iterations;
    all[i].phase1_cost =
        total_cost(candidates[i], phase1[i].op_cost, run.energy_served_kwh, cm);
    all[i].phase1_total = all[i].phase1_cost.total;
  }

  // phase-1 ranking: ascending total cost, ties by (battery, pv)
  std::vector<int> order;
  for (int i = 0; i < count; ++i)
    if (!all[i].failed) order.push_back(i);
  if (order.size() < 1)
    throw std::runtime_error("run_boost: every design failed phase 1");
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (all[a].phase1_total != all[b].phase1_total)
      return all[a].phase1_total < all[b].phase1_total;
    return design_less(all[a].design, all[b].design);
  });
  for (std::size_t r = 0; r < order.size(); ++r)
    all[order[r]].phase1_rank = static_cast<int>(r) + 1;

  int s = std::min<int>(run.plan.s, static_cast<int>(order.size()));
  if (s < run.plan.s)
    run.warnings.push_back("phase 2 reduced to " + std::to_string(s) +
                           " finalists after phase-1 failures");
  std::vector<int> finalists(order.begin(), order.begin() + s);
  for (int i : finalists) all[i].finalist = true;

  std::vector<YearEvalResult> phase2(finalists.size());
  parallel_for(static_cast<int>(finalists.size()), opts.jobs, [&](int k) {
    phase2[k] = evaluate_year(trace, params, all[finalists[k]].design,
                              DispatchMethod::kMilp, opts, false);
  });

  std::vector<int> ok_finalists;
  for (std::size_t k = 0; k < finalists.size(); ++k) {
    const int i = finalists[k];
    if (!phase2[k].ok) {
      all[i].finalist = false;
      all[i].failed = true;
      all[i].error = phase2[k].error;
      run.warnings.push_back("finalist (" +
                             std::to_string(all[i].design.battery_kwh) +
                             " kWh, " + std::to_string(all[i].design.pv_kw) +
                             " kW) excluded in phase 2: " + phase2[k].error);
      continue;
    }
    run.milp_nodes += phase2[k].nodes;
    run.lp_iterations += phase2[k].iterations;
    all[i].phase2_cost = total_cost(all[i].design, phase2[k].op_cost,
                                    run.energy_served_kwh, cm);
    all[i].phase2_total = all[i].phase2_cost.total;
    ok_finalists.push_back(i);
  }
  if (ok_finalists.empty())
    throw std::runtime_error("run_boost: every finalist failed phase 2");

  // phase-1 rank within the surviving finalist subset
  std::vector<int> by_p1 = ok_finalists;
  std::sort(by_p1.begin(), by_p1.end(),
            [&](int a, int b) { return all[a].phase1_rank < all[b].phase1_rank; });
  std::vector<int> p1_within(count, 0);
  for (std::size_t r = 0; r < by_p1.size(); ++r)
    p1_within[by_p1[r]] = static_cast<int>(r) + 1;

  std::sort(ok_finalists.begin(), ok_finalists.end(), [&](int a, int b) {
    if (all[a].phase2_total != all[b].phase2_total)
      return all[a].phase2_total < all[b].phase2_total;
    return design_less(all[a].design, all[b].design);
  });
  for (std::size_t r = 0; r < ok_finalists.size(); ++r) {
    const int i = ok_finalists[r];
    all[i].phase2_rank = static_cast<int>(r) + 1;
    all[i].order_gain = p1_within[i] - all[i].phase2_rank;
  }

  // assemble output ordered by phase-1 rank, failures last
  std::vector<int> final_order = order;
  for (int i = 0; i < count; ++i)
    if (all[i].failed && all[i].phase1_rank == 0) final_order.push_back(i);
  run.designs.reserve(count);
  std::vector<int> remap(count, -1);
  for (int i : final_order) {
    remap[i] = static_cast<int>(run.designs.size());
    run.designs.push_back(all[i]);
  }
  run.finalist_order.reserve(ok_finalists.size());
  for (int i : ok_finalists) run.finalist_order.push_back(remap[i]);
  run.winner = run.finalist_order.front();

  std::vector<RankedDesign> fin;
  fin.reserve(ok_finalists.size());
  for (int i : ok_finalists) fin.push_back(all[i]);
  if (fin.size() >= 2) run.diag = order_robustness_report(fin);

  return run;
}

}  // namespace boostmg
