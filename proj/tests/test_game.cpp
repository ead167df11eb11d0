#include <doctest.h>

#include <sstream>

#include "nsg/errors.hpp"
#include "nsg/game.hpp"
#include "nsg/games.hpp"
#include "test_support.hpp"

using namespace nsg;

TEST_CASE("trivial game is its own validation fixed point") {
  Game g = games::trivial();
  CHECK(g.q1_count == 1);
  CHECK(g.pi_at(0, 0) == 1);
  CHECK(game_size(g) == 1);
  Game again = validate_game(g);
  CHECK(again.pi == g.pi);
  CHECK(again.payoff == g.payoff);
}

TEST_CASE("chsh tables validate unchanged") {
  Game g = games::chsh();
  CHECK(game_size(g) == 16);
  CHECK(g.kept_q1 == std::vector<int>{0, 1});
  auto [pi1, pi2] = marginals(g);
  CHECK(pi1[0] == Rational(1, 2));
  CHECK(pi1[1] == Rational(1, 2));
  CHECK(pi2[0] == Rational(1, 2));
  CHECK(pi2[1] == Rational(1, 2));
}

TEST_CASE("zero-marginal questions are pruned with a remap") {
  // CHSH plus an extra player-1 question that is never asked.
  Game raw = games::chsh();
  Game extended;
  extended.q1_count = 3;
  extended.q2_count = 2;
  extended.a1_count = 2;
  extended.a2_count = 2;
  extended.pi.assign(6, Rational(0));
  extended.payoff.assign(24, Rational(0));
  for (int q1 = 0; q1 < 2; ++q1)
    for (int q2 = 0; q2 < 2; ++q2) {
      extended.pi[extended.pi_index(q1, q2)] = raw.pi_at(q1, q2);
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
          extended.payoff[extended.payoff_index(q1, q2, a1, a2)] =
              raw.payoff_at(q1, q2, a1, a2);
    }
  Game pruned = validate_game(extended);
  CHECK(pruned.q1_count == 2);
  CHECK(pruned.kept_q1 == std::vector<int>{0, 1});
  CHECK(pruned.pi == raw.pi);
}

TEST_CASE("validation failures") {
  Game g = games::chsh();
  SUBCASE("non-normalized pi") {
    g.pi[0] = Rational(1, 2);
    CHECK_THROWS_AS(validate_game(g), NonNormalizedDistribution);
  }
  SUBCASE("payoff out of range") {
    g.payoff[3] = Rational(3, 2);
    CHECK_THROWS_AS(validate_game(g), PayoffOutOfRange);
  }
  SUBCASE("all mass on no question") {
    for (auto& v : g.pi) v = 0;
    CHECK_THROWS_AS(validate_game(g), NonNormalizedDistribution);
  }
}

TEST_CASE("marginals concentrate where pi does") {
  Game g;
  g.q1_count = 2;
  g.q2_count = 2;
  g.a1_count = 1;
  g.a2_count = 1;
  g.pi = {Rational(0), Rational(1), Rational(0), Rational(0)};
  g.payoff.assign(4, Rational(0));
  // Pre-pruning marginals: all mass at q1=0, q2=1.
  auto [pi1, pi2] = marginals(g);
  CHECK(pi1 == std::vector<Rational>{Rational(1), Rational(0)});
  CHECK(pi2 == std::vector<Rational>{Rational(0), Rational(1)});
  Game pruned = validate_game(g);
  CHECK(pruned.q1_count == 1);
  CHECK(pruned.q2_count == 1);
  CHECK(pruned.kept_q2 == std::vector<int>{1});
}

TEST_CASE("acceptance probability on the named games") {
  Game chsh = games::chsh();

  Strategy uniform;
  uniform.q1_count = uniform.q2_count = uniform.a1_count = uniform.a2_count = 2;
  uniform.p.assign(16, Rational(1, 4));
  CHECK(acceptance_probability(chsh, uniform) == Rational(1, 2));

  CHECK(acceptance_probability(chsh, games::pr_box()) == 1);

  Game triv = games::trivial();
  Strategy only;
  only.q1_count = only.q2_count = only.a1_count = only.a2_count = 1;
  only.p = {Rational(1)};
  CHECK(acceptance_probability(triv, only) == 1);

  CHECK_THROWS_AS(acceptance_probability(triv, uniform), DimensionMismatch);
}

TEST_CASE("no-signaling checks") {
  SUBCASE("product strategies never signal") {
    Strategy s = games::product_strategy(
        {{Rational(1, 3), Rational(2, 3)}, {Rational(1), Rational(0)}},
        {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}});
    SignalingReport r = check_no_signaling(s);
    CHECK(r.is_no_signaling);
    CHECK(r.worst_violation == 0);
    CHECK(!r.witness.has_value());
  }
  SUBCASE("copying the other question signals maximally") {
    Strategy s;
    s.q1_count = s.q2_count = s.a1_count = 2;
    s.a2_count = 1;
    s.p.assign(8, Rational(0));
    for (int q1 = 0; q1 < 2; ++q1)
      for (int q2 = 0; q2 < 2; ++q2) s.at(q1, q2, q2, 0) = 1;  // a1 := q2
    SignalingReport r = check_no_signaling(s);
    CHECK(!r.is_no_signaling);
    CHECK(r.worst_violation == 1);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->direction == 1);
  }
  SUBCASE("pr box does not signal") {
    SignalingReport r = check_no_signaling(games::pr_box());
    CHECK(r.is_no_signaling);
    CHECK(r.worst_violation == 0);
  }
  SUBCASE("tolerance admits small violations") {
    Strategy s = games::pr_box();
    s.at(0, 0, 0, 0) += Rational(1, 100);
    s.at(0, 0, 1, 1) -= Rational(1, 100);
    SignalingReport strict = check_no_signaling(s);
    CHECK(!strict.is_no_signaling);
    CHECK(strict.worst_violation == Rational(1, 100));
    CHECK(check_no_signaling(s, Rational(1, 50)).is_no_signaling);
  }
}

TEST_CASE("acceptance probability is linear in the strategy") {
  testsupport::Rng rng(7001);
  for (int trial = 0; trial < 25; ++trial) {
    Game g = testsupport::random_game(rng);
    auto random_strategy = [&] {
      Strategy s;
      s.q1_count = g.q1_count;
      s.q2_count = g.q2_count;
      s.a1_count = g.a1_count;
      s.a2_count = g.a2_count;
      s.p.resize(g.payoff.size());
      std::uniform_int_distribution<int> w(0, 5);
      for (int q1 = 0; q1 < g.q1_count; ++q1)
        for (int q2 = 0; q2 < g.q2_count; ++q2) {
          int total = 0;
          std::vector<int> weights(g.a1_count * g.a2_count);
          for (auto& v : weights) total += (v = w(rng));
          if (total == 0) {
            weights[0] = 1;
            total = 1;
          }
          int i = 0;
          for (int a1 = 0; a1 < g.a1_count; ++a1)
            for (int a2 = 0; a2 < g.a2_count; ++a2) {
              s.at(q1, q2, a1, a2) = Rational(weights[i++], total);
              s.at(q1, q2, a1, a2).canonicalize();
            }
        }
      return s;
    };
    Strategy p = random_strategy(), q = random_strategy();
    Rational lambda(std::uniform_int_distribution<int>(0, 7)(rng), 7);
    lambda.canonicalize();
    Strategy mix = p;
    for (std::size_t i = 0; i < mix.p.size(); ++i)
      mix.p[i] = lambda * p.p[i] + (1 - lambda) * q.p[i];
    Rational lhs = acceptance_probability(g, mix);
    Rational rhs = lambda * acceptance_probability(g, p) +
                   (1 - lambda) * acceptance_probability(g, q);
    CHECK(lhs == rhs);
    CHECK(lhs >= 0);
    CHECK(lhs <= 1);
  }
}

TEST_CASE("relabeling questions and answers preserves value and size") {
  testsupport::Rng rng(7002);
  for (int trial = 0; trial < 10; ++trial) {
    Game g = testsupport::random_game(rng);
    std::vector<int> perm_q1(g.q1_count), perm_a2(g.a2_count);
    for (int i = 0; i < g.q1_count; ++i) perm_q1[i] = i;
    for (int i = 0; i < g.a2_count; ++i) perm_a2[i] = i;
    std::shuffle(perm_q1.begin(), perm_q1.end(), rng);
    std::shuffle(perm_a2.begin(), perm_a2.end(), rng);

    Game h = g;
    for (int q1 = 0; q1 < g.q1_count; ++q1)
      for (int q2 = 0; q2 < g.q2_count; ++q2) {
        h.pi[h.pi_index(perm_q1[q1], q2)] = g.pi_at(q1, q2);
        for (int a1 = 0; a1 < g.a1_count; ++a1)
          for (int a2 = 0; a2 < g.a2_count; ++a2)
            h.payoff[h.payoff_index(perm_q1[q1], q2, a1, perm_a2[a2])] =
                g.payoff_at(q1, q2, a1, a2);
      }
    CHECK(game_size(h) == game_size(g));

    Strategy s;
    s.q1_count = g.q1_count;
    s.q2_count = g.q2_count;
    s.a1_count = g.a1_count;
    s.a2_count = g.a2_count;
    s.p.assign(g.payoff.size(), Rational(0));
    for (int q1 = 0; q1 < g.q1_count; ++q1)
      for (int q2 = 0; q2 < g.q2_count; ++q2)
        s.at(q1, q2, 0, 0) = 1;  // deterministic answer (0,0)
    Strategy sp = s;
    for (int q1 = 0; q1 < g.q1_count; ++q1)
      for (int q2 = 0; q2 < g.q2_count; ++q2) {
        sp.at(q1, q2, 0, 0) = 0;
        sp.at(perm_q1[q1], q2, 0, perm_a2[0]) = 0;
      }
    for (int q1 = 0; q1 < g.q1_count; ++q1)
      for (int q2 = 0; q2 < g.q2_count; ++q2)
        sp.at(perm_q1[q1], q2, 0, perm_a2[0]) = 1;
    CHECK(acceptance_probability(g, s) == acceptance_probability(h, sp));
  }
}
