#pragma once

#include <optional>
#include <utility>

#include "nsg/game.hpp"
#include "nsg/mpc.hpp"
#include "nsg/pipeline.hpp"

namespace nsg {

enum class Decision { AtMostS, AtLeastC };

/// Outcome of the promise decision "w_ns <= s or w_ns >= c". An AtMostS
/// verdict carries an exactly feasible final-stage assignment with
/// objective <= s + 3*epsilon_used < c, which certifies the bound
/// unconditionally.
struct Verdict {
  Decision decision = Decision::AtLeastC;
  Rational s;
  Rational c;
  Rational epsilon_used;
  std::optional<DualAssignment> certificate;
  Rational certificate_objective;
  long rounds = 0;
};

/// Two-sided bracket of w_ns with upper - lower <= the requested epsilon.
struct ValueEstimate {
  enum class Method { Grid, BinarySearch };
  Rational lower;
  Rational upper;
  Method method = Method::BinarySearch;
  long total_rounds = 0;
};

/// Decides which side of the promise holds, via the packing/covering
/// instance at budget s solved at epsilon = (c-s)/4.
/// Throws InvalidThresholds unless 0 <= s < c <= 1.
Verdict decide(const Game& game, const Rational& s, const Rational& c,
               const MPCSolveOptions& options = {});

/// Binary search over promise thresholds; the returned interval brackets
/// w_ns(game) and has width at most epsilon.
ValueEstimate approximate_value(const Game& game, const Rational& epsilon,
                                const MPCSolveOptions& options = {});

/// Exact rational optimum of the strategy LP together with an optimal
/// no-signaling strategy. Guarded by max_lp_vars (TooLargeForExact).
std::pair<Rational, Strategy> exact_value(const Game& game,
                                          int max_lp_vars = 50000);

/// Best acceptance probability over deterministic local strategy pairs.
/// Guarded by the size of the enumeration (EnumerationTooLarge).
Rational classical_value(const Game& game, double max_pairs = 1e7);

}  // namespace nsg
