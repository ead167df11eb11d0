#pragma once

#include "nsg/game.hpp"
#include "nsg/verifier.hpp"

namespace nsg::games {

/// 1x1x1x1 game, pi = 1, R = 1.
Game trivial();

/// CHSH: uniform questions on {0,1}^2, binary answers, accept iff
/// a1 xor a2 = q1 and q2. Classical value 3/4, no-signaling value 1.
Game chsh();

/// Question-guessing game: uniform questions on {0,1}^2, accept iff
/// a1 = q2 and a2 = q1. Both values equal 1/2.
Game guess();

/// CHSH question structure with R identically 0.
Game zero();

/// Product strategy p1(a1|q1) * p2(a2|q2) from conditional tables
/// p1[q1][a1], p2[q2][a2].
Strategy product_strategy(const std::vector<std::vector<Rational>>& p1,
                          const std::vector<std::vector<Rational>>& p2);

/// The PR box: uniform marginals, a1 xor a2 = q1 and q2 with certainty.
Strategy pr_box();

// Verifier-spec forms of the built-in games.
VerifierSpec chsh_verifier();
VerifierSpec guess_verifier();
VerifierSpec equality_verifier();  // l=1, questions (r,r), accept iff a1=a2

}  // namespace nsg::games
