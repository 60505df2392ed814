#pragma once

// Desk-scale exhaustive dispatch oracle: enumerates discretized battery
// net-power decisions per hour (SOC-feasible paths only) with a closed-form
// cheapest source mix per hour and explicit on/off diesel enumeration.
// Independent of the LP/MILP path by construction; returns an upper bound on
// the true optimum that tightens as the grid refines.

#include "boostmg/dispatch.hpp"

namespace boostmg {

// Requires horizon <= 6 and grid_points <= 21; throws std::invalid_argument
// beyond that cap.
double oracle_dispatch(const DispatchProblem& problem, int grid_points);

}  // namespace boostmg
