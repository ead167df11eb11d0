#include "nsg/value.hpp"

#include <cmath>

#include "nsg/errors.hpp"
#include "nsg/simplex.hpp"

namespace nsg {

Verdict decide(const Game& game, const Rational& s, const Rational& c,
               const MPCSolveOptions& options) {
  if (s < 0 || c > 1 || s >= c)
    throw InvalidThresholds("thresholds must satisfy 0 <= s < c <= 1");

  // The dyadic value actually handed to the solver is the one the repair
  // step must use; any epsilon below (c-s)/3 keeps s + 3*eps < c.
  double eps_double = Rational((c - s) / 4).get_d();
  Rational eps_used = rational_from_double(eps_double);

  Verdict verdict;
  verdict.s = s;
  verdict.c = c;
  verdict.epsilon_used = eps_used;

  MPCInstance inst = build_mpc_instance(game, s);
  MPCOutcome outcome = solve_mpc(inst, eps_double, options);
  verdict.rounds = outcome.rounds;
  if (outcome.kind == MPCKind::Approx) {
    auto [assignment, objective] =
        repair_approx_solution(game, s, outcome.x, eps_used);
    verdict.decision = Decision::AtMostS;
    verdict.certificate = std::move(assignment);
    verdict.certificate_objective = std::move(objective);
  } else {
    verdict.decision = Decision::AtLeastC;
  }
  return verdict;
}

ValueEstimate approximate_value(const Game& game, const Rational& epsilon,
                                const MPCSolveOptions& options) {
  if (epsilon <= 0 || epsilon >= 1)
    throw InvalidEpsilon("epsilon must lie in (0,1)");

  ValueEstimate est;
  est.method = ValueEstimate::Method::BinarySearch;
  Rational lo = 0, hi = 1;
  Rational quarter = epsilon / 4;

  // Each decide outcome is an unconditional fact: AtMostS certifies
  // w_ns < c, an infeasibility claim implies w_ns > s. The interval
  // contracts to width epsilon/2 in the limit.
  int max_steps = 4;
  for (Rational w = epsilon; w < 1; w *= 2) ++max_steps;
  for (int step = 0; step < max_steps && hi - lo > epsilon; ++step) {
    Rational mid = (lo + hi) / 2;
    Rational s = mid - quarter, c = mid + quarter;
    if (s < 0) {
      s = 0;
      c = quarter * 2;
    }
    if (c > 1) {
      c = 1;
      s = 1 - quarter * 2;
    }
    Verdict v = decide(game, s, c, options);
    est.total_rounds += v.rounds;
    if (v.decision == Decision::AtMostS)
      hi = c < hi ? c : hi;
    else
      lo = s > lo ? s : lo;
  }
  est.lower = lo;
  est.upper = hi;
  return est;
}

std::pair<Rational, Strategy> exact_value(const Game& game, int max_lp_vars) {
  std::int64_t joint = game_size(game);
  std::int64_t vars = joint +
                      static_cast<std::int64_t>(game.q1_count) * game.a1_count +
                      static_cast<std::int64_t>(game.q2_count) * game.a2_count;
  if (vars > max_lp_vars)
    throw TooLargeForExact("strategy LP has " + std::to_string(vars) +
                           " variables, guard is " +
                           std::to_string(max_lp_vars));

  LinearProgram lp = build_primal(game);
  LpSolution sol = solve_exact(lp);
  if (sol.status != LpStatus::Optimal)
    throw Error("strategy LP unexpectedly not optimal");

  Strategy strat;
  strat.q1_count = game.q1_count;
  strat.q2_count = game.q2_count;
  strat.a1_count = game.a1_count;
  strat.a2_count = game.a2_count;
  strat.p.assign(sol.values.begin(), sol.values.begin() + joint);
  return {std::move(sol.objective), std::move(strat)};
}

Rational classical_value(const Game& game, double max_pairs) {
  double pairs = std::pow(game.a1_count, game.q1_count) *
                 std::pow(game.a2_count, game.q2_count);
  if (!(pairs <= max_pairs))
    throw EnumerationTooLarge("deterministic strategy space too large");

  // Enumerate player 2's function; player 1's best response separates
  // over q1, so it is picked greedily.
  std::vector<int> f2(game.q2_count, 0);
  Rational best = 0;
  for (;;) {
    Rational total = 0;
    for (int q1 = 0; q1 < game.q1_count; ++q1) {
      Rational best_a1 = 0;
      for (int a1 = 0; a1 < game.a1_count; ++a1) {
        Rational v = 0;
        for (int q2 = 0; q2 < game.q2_count; ++q2)
          v += game.pi_at(q1, q2) * game.payoff_at(q1, q2, a1, f2[q2]);
        if (v > best_a1) best_a1 = v;
      }
      total += best_a1;
    }
    if (total > best) best = total;

    int pos = 0;
    while (pos < game.q2_count && ++f2[pos] == game.a2_count) f2[pos++] = 0;
    if (pos == game.q2_count) break;
  }
  return best;
}

}  // namespace nsg
