#pragma once

// Two-phase sizing driver: rank many designs by the cheap LP dispatch over
// the year, re-rank the top subset with the accurate MILP dispatch, and
// report how stable the ordering was.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boostmg/baselines.hpp"
#include "boostmg/branch_bound.hpp"
#include "boostmg/dispatch.hpp"
#include "boostmg/economics.hpp"
#include "boostmg/oo.hpp"

namespace boostmg {

enum class DispatchMethod { kLp, kMilp, kDp, kGreedy };

const char* to_string(DispatchMethod m);
std::optional<DispatchMethod> dispatch_method_from(const std::string& name);

struct EngineOptions {
  int window_hours = 168;
  SimplexOptions lp;
  long milp_max_nodes = 200000;
  DPConfig dp;
  int jobs = 0;  // 0 = hardware concurrency
};

struct YearEvalResult {
  bool ok = false;
  std::string error;
  double op_cost = 0.0;  // $/yr over the trace
  long iterations = 0;
  long nodes = 0;
  DispatchSolution schedule;  // concatenated across windows when requested
};

// Solves the dispatch window by window with SOC carried between windows.
YearEvalResult evaluate_year(const HourlyTrace& trace,
                             const DispatchParams& params, const Design& design,
                             DispatchMethod method, const EngineOptions& opts,
                             bool keep_schedule = false);

struct OOPlan {
  // inputs
  double confidence = 0.99;
  double alpha = 0.05;
  double good_fraction = 0.10;
  int overlap_k = 1;
  double ap_target = 0.90;
  int n_override = 0;  // 0 = derive from the coverage bound
  int s_override = 0;  // 0 = derive from the alignment target
  // resolved
  int n = 0;
  int g = 0;
  int s = 0;
  double ap_achieved = 0.0;
};

OOPlan resolve_plan(OOPlan plan);

struct RankedDesign {
  Design design;
  bool failed = false;
  std::string error;
  double phase1_total = 0.0;  // $/yr including annualized investment
  CostBreakdown phase1_cost;
  int phase1_rank = 0;  // 1-based among evaluated designs
  bool finalist = false;
  double phase2_total = 0.0;
  CostBreakdown phase2_cost;
  int phase2_rank = 0;   // 1-based among finalists
  int order_gain = 0;    // finalist phase-1 rank minus phase-2 rank
};

struct RankDiagnostics {
  double spearman = 0.0;
  double kendall = 0.0;
  int max_abs_gain = 0;
  double frac_gain_le2 = 0.0;  // fraction of finalists with |gain| <= 2
};

RankDiagnostics order_robustness_report(const std::vector<RankedDesign>& finalists);

struct BoostRun {
  OOPlan plan;
  std::vector<RankedDesign> designs;  // sorted by phase-1 rank; failures last
  std::vector<int> finalist_order;    // indices into designs, by phase-2 rank
  int winner = -1;                    // index into designs
  RankDiagnostics diag;
  double energy_served_kwh = 0.0;
  std::vector<std::string> warnings;
  long lp_iterations = 0;
  long milp_nodes = 0;
};

// Algorithm: evaluate all candidates with the LP year model, rank by total
// cost, re-evaluate the top s with the MILP year model, re-rank, return the
// ranked finalists plus order-robustness diagnostics.
BoostRun run_boost(const HourlyTrace& trace, const OOPlan& plan,
                   const DispatchParams& params, const CostModel& cm,
                   const std::vector<Design>& candidates,
                   const EngineOptions& opts);

}  // namespace boostmg
