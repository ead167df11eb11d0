#pragma once

#include <utility>
#include <vector>

#include "nsg/game.hpp"
#include "nsg/linear_program.hpp"
#include "nsg/mpc.hpp"

namespace nsg {

// The chain of equivalent programs for w_ns(G):
//   primal -> relaxed -> scaled -> dual -> final (the all-nonnegative
// minimization), and from there the mixed packing/covering instance with an
// objective budget. Every stage is materialized as a LinearProgram with a
// stage tag so each step can be checked against the exact oracle.

inline constexpr const char* kStagePrimal = "primal";
inline constexpr const char* kStageRelaxed = "relaxed";
inline constexpr const char* kStageScaled = "scaled";
inline constexpr const char* kStageDual = "dual";
inline constexpr const char* kStageFinal = "final";

/// Feasible point of the relaxed program: subnormalized joint table p_tilde
/// dominated by the per-player conditionals p1, p2 (which each sum to 1).
struct RelaxedSolution {
  std::vector<Rational> p_tilde;  // (q1,q2,a1,a2), row-major
  std::vector<Rational> p1;       // (q1,a1)
  std::vector<Rational> p2;       // (q2,a2)
};

/// Assignment for the final-stage program.
struct DualAssignment {
  std::vector<Rational> ybar1;  // (q1,q2,a1)
  std::vector<Rational> ybar2;  // (q1,q2,a2)
  std::vector<Rational> z1;     // (q1)
  std::vector<Rational> z2;     // (q2)

  Rational objective() const;
};

/// The strategy LP: maximize acceptance over joint conditionals p with
/// consistent marginals p1, p2. Its optimum is w_ns(G).
LinearProgram build_primal(const Game& game);

/// Marginal-consistency equalities weakened to inequalities against p1, p2;
/// normalization moved to p1, p2. Optimal value unchanged.
LinearProgram relax_primal(const LinearProgram& lp, const Game& game);

/// Substitution x = pi * p. Optimal value unchanged.
LinearProgram scale_by_pi(const LinearProgram& lp, const Game& game);

/// LP dual of the scaled program (strong duality).
LinearProgram dualize(const LinearProgram& lp, const Game& game);

/// Clips y <= 1 (value-preserving) and substitutes ybar = 1 - y, giving a
/// minimization with all coefficients and right-hand sides nonnegative.
LinearProgram clip_and_complement(const LinearProgram& lp, const Game& game);

/// Completes a relaxed-feasible point to a full strategy that meets the
/// marginal equalities exactly and dominates p_tilde pointwise.
/// Throws InfeasibleInput if the relaxed invariants fail.
Strategy complete_strategy(const Game& game, const RelaxedSolution& relaxed);

/// Packing/covering instance: the final-stage constraints plus the budget
/// row sum(z) <= s. Variable order: ybar1 block, ybar2 block, z1, z2.
MPCInstance build_mpc_instance(const Game& game, const Rational& s);

/// Splits a vector in build_mpc_instance's variable order.
DualAssignment unpack_mpc_vector(const Game& game,
                                 const std::vector<Rational>& x);

/// Exact feasibility check for the final-stage program.
bool is_feasible_final(const Game& game, const DualAssignment& assignment);

/// Repairs a (1+eps)-approximate solution of build_mpc_instance(game, s)
/// into an exactly feasible final-stage assignment with objective at most
/// s + 3*eps. Throws NotApproxFeasible if the input fails verification.
std::pair<DualAssignment, Rational> repair_approx_solution(
    const Game& game, const Rational& s, const std::vector<Rational>& approx,
    const Rational& eps);

}  // namespace nsg
