#include <doctest.h>

#include <sstream>

#include "nsg/errors.hpp"
#include "nsg/games.hpp"
#include "nsg/verifier.hpp"

using namespace nsg;

TEST_CASE("zero-randomness verifier compiles to the trivial game") {
  VerifierSpec spec;
  spec.randomness_bits = 0;
  spec.a1_count = spec.a2_count = 1;
  spec.question_map = {{0, 0}};
  spec.predicate = {{1}};
  Game g = compile_game(spec);
  CHECK(game_size(g) == 1);
  CHECK(g.pi_at(0, 0) == 1);
  CHECK(g.payoff_at(0, 0, 0, 0) == 1);
}

TEST_CASE("equality verifier: diagonal questions, match to win") {
  Game g = compile_game(games::equality_verifier());
  CHECK(g.q1_count == 2);
  CHECK(g.q2_count == 2);
  CHECK(g.pi_at(0, 0) == Rational(1, 2));
  CHECK(g.pi_at(1, 1) == Rational(1, 2));
  CHECK(g.pi_at(0, 1) == 0);
  for (int q = 0; q < 2; ++q)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int a2 = 0; a2 < 2; ++a2)
        CHECK(g.payoff_at(q, q, a1, a2) == (a1 == a2 ? 1 : 0));
}

TEST_CASE("chsh verifier compiles to the chsh tables") {
  Game compiled = compile_game(games::chsh_verifier());
  Game direct = games::chsh();
  CHECK(compiled.q1_count == direct.q1_count);
  CHECK(compiled.q2_count == direct.q2_count);
  CHECK(compiled.pi == direct.pi);
  CHECK(compiled.payoff == direct.payoff);
}

TEST_CASE("compiled distributions are exact preimage frequencies") {
  // A lopsided map: three of four random strings hit the same pair.
  VerifierSpec spec;
  spec.randomness_bits = 2;
  spec.a1_count = spec.a2_count = 2;
  spec.question_map = {{0, 0}, {0, 0}, {0, 0}, {1, 0}};
  spec.predicate.assign(4, std::vector<uint8_t>(4, 0));
  spec.predicate[0][0] = 1;  // accept (0,0) for r=0 only
  spec.predicate[3] = {1, 1, 1, 1};
  Game g = compile_game(spec);
  CHECK(g.pi_at(0, 0) == Rational(3, 4));
  CHECK(g.pi_at(1, 0) == Rational(1, 4));
  // Conditional frequency: one accepting r out of three in the preimage.
  CHECK(g.payoff_at(0, 0, 0, 0) == Rational(1, 3));
  CHECK(g.payoff_at(0, 0, 1, 1) == 0);
  CHECK(g.payoff_at(1, 0, 1, 0) == 1);

  // Independent recount over the enumeration.
  for (int q1 = 0; q1 < g.q1_count; ++q1)
    for (int q2 = 0; q2 < g.q2_count; ++q2)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
          int hits = 0, accepts = 0;
          for (std::uint64_t r = 0; r < 4; ++r) {
            if (spec.question_map[r] != std::make_pair(q1, q2)) continue;
            ++hits;
            if (spec.accepts(r, a1, a2)) ++accepts;
          }
          if (hits == 0) continue;
          Rational want(accepts, hits);
          want.canonicalize();
          CHECK(g.payoff_at(q1, q2, a1, a2) == want);
        }
}

TEST_CASE("compiled pi always sums to one") {
  for (const auto& spec : {games::chsh_verifier(), games::guess_verifier(),
                           games::equality_verifier()}) {
    Game g = compile_game(spec);
    Rational total = 0;
    for (const auto& v : g.pi) total += v;
    CHECK(total == 1);
  }
}

TEST_CASE("compilation guards") {
  VerifierSpec spec = games::chsh_verifier();
  CHECK_THROWS_AS(compile_game(spec, 1), EnumerationTooLarge);
  spec.question_map.pop_back();
  CHECK_THROWS_AS(compile_game(spec), IncompleteSpec);
}

TEST_CASE("verifier text format round-trips") {
  VerifierSpec spec = games::guess_verifier();
  std::stringstream buf;
  write_verifier(buf, spec);
  VerifierSpec back = read_verifier(buf);
  CHECK(back.randomness_bits == spec.randomness_bits);
  CHECK(back.question_map == spec.question_map);
  CHECK(back.predicate == spec.predicate);

  std::istringstream bad("NSVERIFIER 1\nrandbits 1\nanswers 2 2\nmap 0 0 0\n");
  CHECK_THROWS_AS(read_verifier(bad), IncompleteSpec);
}
