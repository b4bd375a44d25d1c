#pragma once

#include "ccsplan/lp.hpp"

namespace ccsplan {

inline constexpr std::size_t kOracleMaxVars = 12;
inline constexpr std::size_t kOracleMaxRows = 12;

// Exact optimum of a small LP by exhaustive enumeration of basic solutions
// (every choice of active rows and bounds that pins down a unique point),
// plus enumeration of the extreme rays of the recession cone to detect
// unboundedness. Shares no code with the simplex solver.
//
// Throws std::invalid_argument if the LP exceeds kOracleMaxVars variables or
// kOracleMaxRows rows. `iterations` in the result counts candidate systems.
LpSolution enumerate_oracle(const LinearProgram& lp);

}  // namespace ccsplan
