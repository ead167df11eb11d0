#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "nsg/rational.hpp"

namespace nsg {

/// A two-player one-round game: question sets Q1, Q2, answer sets A1, A2,
/// a question distribution pi over Q1 x Q2 and a payoff table R with values
/// in [0,1]. Tables are dense, row-major over (q1,q2) and (q1,q2,a1,a2).
/// Instances produced by validate_game satisfy: pi sums to 1, every question
/// has positive marginal probability, and all payoffs lie in [0,1].
struct Game {
  int q1_count = 0;
  int q2_count = 0;
  int a1_count = 0;
  int a2_count = 0;
  std::vector<Rational> pi;      // q1_count * q2_count
  std::vector<Rational> payoff;  // q1_count * q2_count * a1_count * a2_count

  // Original question indices retained by validate_game's pruning
  // (identity when nothing was pruned). Lets strategies be lifted back.
  std::vector<int> kept_q1;
  std::vector<int> kept_q2;

  int pi_index(int q1, int q2) const { return q1 * q2_count + q2; }
  int payoff_index(int q1, int q2, int a1, int a2) const {
    return ((q1 * q2_count + q2) * a1_count + a1) * a2_count + a2;
  }
  const Rational& pi_at(int q1, int q2) const { return pi[pi_index(q1, q2)]; }
  const Rational& payoff_at(int q1, int q2, int a1, int a2) const {
    return payoff[payoff_index(q1, q2, a1, a2)];
  }
};

/// A family of conditional distributions p(a1,a2|q1,q2), dense row-major
/// over (q1,q2,a1,a2).
struct Strategy {
  int q1_count = 0;
  int q2_count = 0;
  int a1_count = 0;
  int a2_count = 0;
  std::vector<Rational> p;

  int index(int q1, int q2, int a1, int a2) const {
    return ((q1 * q2_count + q2) * a1_count + a1) * a2_count + a2;
  }
  const Rational& at(int q1, int q2, int a1, int a2) const {
    return p[index(q1, q2, a1, a2)];
  }
  Rational& at(int q1, int q2, int a1, int a2) {
    return p[index(q1, q2, a1, a2)];
  }
};

struct SignalingWitness {
  int direction;  // 1: player 1's marginal depends on q2; 2: symmetric
  int q;          // the question of the player whose marginal moved
  int a;          // the answer whose marginal moved
  int q_other;    // the two other-player questions exhibiting the difference
  int q_other_prime;
};

struct SignalingReport {
  bool is_no_signaling = true;
  Rational worst_violation = 0;
  std::optional<SignalingWitness> witness;
};

/// Checks invariants (pi sums to 1, payoffs in [0,1]), prunes questions with
/// zero marginal probability and records the index remapping in kept_q1/q2.
/// Throws NonNormalizedDistribution, PayoffOutOfRange or EmptyGame.
Game validate_game(const Game& raw);

/// (pi1, pi2): marginal question distributions; each sums to 1 for a
/// validated game.
std::pair<std::vector<Rational>, std::vector<Rational>> marginals(
    const Game& game);

/// Sum_{q1,q2} pi(q1,q2) Sum_{a1,a2} R(a1,a2|q1,q2) p(a1,a2|q1,q2), exact.
/// Throws DimensionMismatch if the strategy does not match the game.
Rational acceptance_probability(const Game& game, const Strategy& strategy);

/// Worst absolute deviation of either player's answer marginal across the
/// other player's questions. tolerance > 0 supports float-valued strategies.
SignalingReport check_no_signaling(const Strategy& strategy,
                                   const Rational& tolerance = 0);

/// |Q1||Q2||A1||A2|.
std::int64_t game_size(const Game& game);

/// Checks that p(.|q1,q2) sums to 1 for every question pair and is nonneg.
bool is_valid_strategy(const Strategy& strategy);

// Text formats "NSGAME 1" / "NSSTRAT 1". Readers throw ParseError with a
// line number; read_game validates (and prunes) before returning.
Game read_game(std::istream& in);
void write_game(std::ostream& out, const Game& game);
Strategy read_strategy(std::istream& in);
void write_strategy(std::ostream& out, const Strategy& strategy);

Game read_game_file(const std::string& path);
Strategy read_strategy_file(const std::string& path);

}  // namespace nsg
