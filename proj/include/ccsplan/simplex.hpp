#pragma once

#include "ccsplan/lp.hpp"

namespace ccsplan {

// Bounded-variable primal simplex, revised form with a dense basis inverse.
// Two phases (artificial variables on the rows that the all-logical start
// basis cannot satisfy), Dantzig pricing with a switch to Bland's rule after
// `stall_threshold` non-improving pivots, ratio-test ties broken by lowest
// variable index. Rows and columns are equilibrated with power-of-two
// geometric-mean scale factors before solving.
//
// Deterministic: identical input gives a bit-identical result.
LpSolution solve(const LinearProgram& lp, const SolverSettings& settings = {});

}  // namespace ccsplan
