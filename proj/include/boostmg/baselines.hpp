#pragma once

// Comparison dispatch policies: backward-recursion dynamic programming over a
// discretized SOC lattice, and the naive one-step-ahead greedy rule. Both
// return schedules that are feasible for the accurate (commitment) model, so
// their costs upper-bound the MILP optimum.

#include "boostmg/dispatch.hpp"

namespace boostmg {

struct DPConfig {
  int soc_levels = 51;  // >= 2
};

// DP over the SOC grid {soc_min + i*(soc_max-soc_min)/(levels-1)}; stage-0
// transitions start from the exact incoming SOC, every later SOC lies on the
// grid. Per-transition cost is the closed-form cheapest source mix.
DispatchSolution dp_dispatch(const DispatchProblem& problem, const DPConfig& cfg);

// Hour by hour: PV serves load, surplus PV charges, the battery covers the
// deficit, and the rest comes from the cheaper of grid and diesel (diesel
// only when the remaining deficit reaches its commitment floor and it beats
// the grid price). Never charges from grid or diesel.
DispatchSolution greedy_dispatch(const DispatchProblem& problem);

}  // namespace boostmg
