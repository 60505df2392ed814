#pragma once

// Branch-and-bound over the binary variables of a StandardFormModel.
// Best-first node order (ties by node id), branching on the most fractional
// binary (ties by lowest variable index), LP relaxation bounding, an initial
// rounding heuristic, and reduced-cost fixing at the root. Exact by default:
// nodes are pruned only when their bound cannot improve the incumbent beyond
// floating-point resolution.

#include "boostmg/model.hpp"
#include "boostmg/simplex.hpp"

namespace boostmg {

struct MilpOptions {
  SimplexOptions lp;
  long max_nodes = 200000;
  double integrality_tol = 1e-6;
  double relative_gap = 0.0;  // 0 = exact; >0 prunes within the given fraction
};

SolveReport solve_milp(const StandardFormModel& m, const MilpOptions& opt = {},
                       const Basis* root_hint = nullptr);

}  // namespace boostmg
