#pragma once

// Bounded-variable primal simplex over StandardFormModel, revised form with
// a dense basis inverse. Two-phase (artificial variables) when no feasible
// warm basis is supplied. Dantzig pricing with a Bland fallback after a
// degeneracy stall, so termination is guaranteed and results are
// deterministic for a fixed model.

#include <vector>

#include "boostmg/model.hpp"

namespace boostmg {

struct SimplexOptions {
  double feas_tol = 1e-7;    // bound/residual feasibility (absolute)
  double opt_tol = 1e-9;     // reduced-cost significance
  double pivot_tol = 1e-9;   // smallest acceptable pivot magnitude
  long max_iterations = 200000;
  int refresh_interval = 256;  // periodic reduced-cost recompute
};

// A warm-start hint: one structural variable per row. Accepted only when the
// induced basis matrix is triangular-orderable and primal feasible; otherwise
// the solver falls back to the artificial start on its own.
struct Basis {
  std::vector<int> basic;
};

SolveReport solve_lp(const StandardFormModel& m, const SimplexOptions& opt = {},
                     const Basis* warm = nullptr, Basis* basis_out = nullptr);

// Same, with variable bounds overridden (used by branch-and-bound nodes).
SolveReport solve_lp_bounded(const StandardFormModel& m,
                             const std::vector<double>& lower,
                             const std::vector<double>& upper,
                             const SimplexOptions& opt = {},
                             const Basis* warm = nullptr,
                             Basis* basis_out = nullptr);

}  // namespace boostmg
