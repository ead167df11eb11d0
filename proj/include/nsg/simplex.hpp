#pragma once

#include <vector>

#include "nsg/linear_program.hpp"

namespace nsg {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;             // meaningful iff Optimal
  std::vector<Rational> values;   // one per LP variable, iff not Infeasible
};

/// Exact rational two-phase simplex. Dantzig pricing with a switch to
/// Bland's rule after an iteration threshold to rule out cycling.
LpSolution solve_exact(const LinearProgram& lp);

/// Phase 1 only: finds any exactly feasible point, or reports Infeasible.
LpSolution solve_feasibility(const LinearProgram& lp);

}  // namespace nsg
