#include "nsg/games.hpp"

#include <functional>

#include "nsg/errors.hpp"

namespace nsg::games {

namespace {

Game binary_uniform_game(const std::function<bool(int, int, int, int)>& win) {
  Game g;
  g.q1_count = g.q2_count = g.a1_count = g.a2_count = 2;
  g.pi.assign(4, Rational(1, 4));
  g.payoff.assign(16, Rational(0));
  for (int q1 = 0; q1 < 2; ++q1)
    for (int q2 = 0; q2 < 2; ++q2)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
          if (win(q1, q2, a1, a2))
            g.payoff[g.payoff_index(q1, q2, a1, a2)] = 1;
  return validate_game(g);
}

}  // namespace

Game trivial() {
  Game g;
  g.q1_count = g.q2_count = g.a1_count = g.a2_count = 1;
  g.pi = {Rational(1)};
  g.payoff = {Rational(1)};
  return validate_game(g);
}

Game chsh() {
  return binary_uniform_game([](int q1, int q2, int a1, int a2) {
    return (a1 ^ a2) == (q1 & q2);
  });
}

Game guess() {
  return binary_uniform_game(
      [](int q1, int q2, int a1, int a2) { return a1 == q2 && a2 == q1; });
}

Game zero() {
  return binary_uniform_game([](int, int, int, int) { return false; });
}

Strategy product_strategy(const std::vector<std::vector<Rational>>& p1,
                          const std::vector<std::vector<Rational>>& p2) {
  Strategy s;
  s.q1_count = static_cast<int>(p1.size());
  s.q2_count = static_cast<int>(p2.size());
  if (s.q1_count == 0 || s.q2_count == 0)
    throw DimensionMismatch("empty conditional tables");
  s.a1_count = static_cast<int>(p1[0].size());
  s.a2_count = static_cast<int>(p2[0].size());
  s.p.resize(static_cast<std::size_t>(s.q1_count) * s.q2_count * s.a1_count *
             s.a2_count);
  for (int q1 = 0; q1 < s.q1_count; ++q1)
    for (int q2 = 0; q2 < s.q2_count; ++q2)
      for (int a1 = 0; a1 < s.a1_count; ++a1)
        for (int a2 = 0; a2 < s.a2_count; ++a2)
          s.at(q1, q2, a1, a2) = p1[q1][a1] * p2[q2][a2];
  return s;
}

Strategy pr_box() {
  Strategy s;
  s.q1_count = s.q2_count = s.a1_count = s.a2_count = 2;
  s.p.assign(16, Rational(0));
  for (int q1 = 0; q1 < 2; ++q1)
    for (int q2 = 0; q2 < 2; ++q2)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
          if ((a1 ^ a2) == (q1 & q2)) s.at(q1, q2, a1, a2) = Rational(1, 2);
  return s;
}

namespace {

VerifierSpec binary_two_bit_verifier(
    const std::function<bool(int, int, int, int)>& win) {
  VerifierSpec spec;
  spec.randomness_bits = 2;
  spec.a1_count = spec.a2_count = 2;
  spec.question_map.resize(4);
  spec.predicate.assign(4, std::vector<uint8_t>(4, 0));
  for (int r = 0; r < 4; ++r) {
    int q1 = (r >> 1) & 1, q2 = r & 1;
    spec.question_map[r] = {q1, q2};
    for (int a1 = 0; a1 < 2; ++a1)
      for (int a2 = 0; a2 < 2; ++a2)
        if (win(q1, q2, a1, a2)) spec.predicate[r][a1 * 2 + a2] = 1;
  }
  return spec;
}

}  // namespace

VerifierSpec chsh_verifier() {
  return binary_two_bit_verifier([](int q1, int q2, int a1, int a2) {
    return (a1 ^ a2) == (q1 & q2);
  });
}

VerifierSpec guess_verifier() {
  return binary_two_bit_verifier(
      [](int q1, int q2, int a1, int a2) { return a1 == q2 && a2 == q1; });
}

VerifierSpec equality_verifier() {
  VerifierSpec spec;
  spec.randomness_bits = 1;
  spec.a1_count = spec.a2_count = 2;
  spec.question_map = {{0, 0}, {1, 1}};
  spec.predicate.assign(2, std::vector<uint8_t>(4, 0));
  for (int r = 0; r < 2; ++r)
    for (int a = 0; a < 2; ++a) spec.predicate[r][a * 2 + a] = 1;
  return spec;
}

}  // namespace nsg::games
