#include "nsg/game.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "nsg/errors.hpp"
#include "parse_util.hpp"

namespace nsg {

namespace {

void check_table_sizes(const Game& g) {
  if (g.q1_count <= 0 || g.q2_count <= 0 || g.a1_count <= 0 || g.a2_count <= 0)
    throw EmptyGame("all question/answer set sizes must be positive");
  std::size_t npi = static_cast<std::size_t>(g.q1_count) * g.q2_count;
  std::size_t nr = npi * g.a1_count * g.a2_count;
  if (g.pi.size() != npi || g.payoff.size() != nr)
    throw DimensionMismatch("game table sizes do not match declared counts");
}

}  // namespace

Game validate_game(const Game& raw) {
  check_table_sizes(raw);

  Rational total = 0;
  for (const auto& v : raw.pi) {
    if (v < 0) throw NonNormalizedDistribution("negative pi entry");
    total += v;
  }
  if (total != 1)
    throw NonNormalizedDistribution("pi sums to " + to_fraction_string(total) +
                                    ", expected 1");
  for (const auto& v : raw.payoff)
    if (v < 0 || v > 1)
      throw PayoffOutOfRange("payoff entry " + to_fraction_string(v) +
                             " outside [0,1]");

  auto [pi1, pi2] = marginals(raw);
  std::vector<int> keep1, keep2;
  for (int q1 = 0; q1 < raw.q1_count; ++q1)
    if (pi1[q1] > 0) keep1.push_back(q1);
  for (int q2 = 0; q2 < raw.q2_count; ++q2)
    if (pi2[q2] > 0) keep2.push_back(q2);
  if (keep1.empty() || keep2.empty())
    throw EmptyGame("every question has zero marginal probability");

  Game g;
  g.q1_count = static_cast<int>(keep1.size());
  g.q2_count = static_cast<int>(keep2.size());
  g.a1_count = raw.a1_count;
  g.a2_count = raw.a2_count;
  g.pi.resize(static_cast<std::size_t>(g.q1_count) * g.q2_count);
  g.payoff.resize(g.pi.size() * g.a1_count * g.a2_count);
  for (int i = 0; i < g.q1_count; ++i)
    for (int j = 0; j < g.q2_count; ++j) {
      g.pi[g.pi_index(i, j)] = raw.pi_at(keep1[i], keep2[j]);
      for (int a1 = 0; a1 < g.a1_count; ++a1)
        for (int a2 = 0; a2 < g.a2_count; ++a2)
          g.payoff[g.payoff_index(i, j, a1, a2)] =
              raw.payoff_at(keep1[i], keep2[j], a1, a2);
    }

  // Compose with any remapping already recorded on the input.
  auto lift = [](const std::vector<int>& prev, int idx) {
    return prev.empty() ? idx : prev[idx];
  };
  g.kept_q1.reserve(keep1.size());
  g.kept_q2.reserve(keep2.size());
  for (int q : keep1) g.kept_q1.push_back(lift(raw.kept_q1, q));
  for (int q : keep2) g.kept_q2.push_back(lift(raw.kept_q2, q));
  return g;
}

std::pair<std::vector<Rational>, std::vector<Rational>> marginals(
    const Game& game) {
  std::vector<Rational> pi1(game.q1_count, Rational(0));
  std::vector<Rational> pi2(game.q2_count, Rational(0));
  for (int q1 = 0; q1 < game.q1_count; ++q1)
    for (int q2 = 0; q2 < game.q2_count; ++q2) {
      const Rational& v = game.pi_at(q1, q2);
      pi1[q1] += v;
      pi2[q2] += v;
    }
  return {std::move(pi1), std::move(pi2)};
}

Rational acceptance_probability(const Game& game, const Strategy& strategy) {
  if (strategy.q1_count != game.q1_count ||
      strategy.q2_count != game.q2_count ||
      strategy.a1_count != game.a1_count ||
      strategy.a2_count != game.a2_count)
    throw DimensionMismatch("strategy dimensions do not match game");
  Rational acc = 0;
  for (int q1 = 0; q1 < game.q1_count; ++q1)
    for (int q2 = 0; q2 < game.q2_count; ++q2) {
      const Rational& pqq = game.pi_at(q1, q2);
      if (pqq == 0) continue;
      Rational inner = 0;
      for (int a1 = 0; a1 < game.a1_count; ++a1)
        for (int a2 = 0; a2 < game.a2_count; ++a2)
          inner += game.payoff_at(q1, q2, a1, a2) * strategy.at(q1, q2, a1, a2);
      acc += pqq * inner;
    }
  return acc;
}

SignalingReport check_no_signaling(const Strategy& s,
                                   const Rational& tolerance) {
  SignalingReport report;
  auto consider = [&](const Rational& diff, SignalingWitness w) {
    Rational d = abs(diff);
    if (d > report.worst_violation) {
      report.worst_violation = d;
      report.witness = w;
    }
  };

  // Player 1 marginal vs. the question sent to player 2.
  for (int q1 = 0; q1 < s.q1_count; ++q1)
    for (int a1 = 0; a1 < s.a1_count; ++a1)
      for (int q2 = 0; q2 + 1 < s.q2_count; ++q2)
        for (int q2p = q2 + 1; q2p < s.q2_count; ++q2p) {
          Rational m = 0, mp = 0;
          for (int a2 = 0; a2 < s.a2_count; ++a2) {
            m += s.at(q1, q2, a1, a2);
            mp += s.at(q1, q2p, a1, a2);
          }
          consider(m - mp, {1, q1, a1, q2, q2p});
        }
  // Player 2 marginal vs. the question sent to player 1.
  for (int q2 = 0; q2 < s.q2_count; ++q2)
    for (int a2 = 0; a2 < s.a2_count; ++a2)
      for (int q1 = 0; q1 + 1 < s.q1_count; ++q1)
        for (int q1p = q1 + 1; q1p < s.q1_count; ++q1p) {
          Rational m = 0, mp = 0;
          for (int a1 = 0; a1 < s.a1_count; ++a1) {
            m += s.at(q1, q2, a1, a2);
            mp += s.at(q1p, q2, a1, a2);
          }
          consider(m - mp, {2, q2, a2, q1, q1p});
        }

  report.is_no_signaling = report.worst_violation <= tolerance;
  if (report.is_no_signaling && report.worst_violation == 0)
    report.witness.reset();
  return report;
}

std::int64_t game_size(const Game& game) {
  return static_cast<std::int64_t>(game.q1_count) * game.q2_count *
         game.a1_count * game.a2_count;
}

bool is_valid_strategy(const Strategy& s) {
  if (s.q1_count <= 0 || s.q2_count <= 0 || s.a1_count <= 0 || s.a2_count <= 0)
    return false;
  std::size_t n = static_cast<std::size_t>(s.q1_count) * s.q2_count *
                  s.a1_count * s.a2_count;
  if (s.p.size() != n) return false;
  for (const auto& v : s.p)
    if (v < 0) return false;
  for (int q1 = 0; q1 < s.q1_count; ++q1)
    for (int q2 = 0; q2 < s.q2_count; ++q2) {
      Rational sum = 0;
      for (int a1 = 0; a1 < s.a1_count; ++a1)
        for (int a2 = 0; a2 < s.a2_count; ++a2) sum += s.at(q1, q2, a1, a2);
      if (sum != 1) return false;
    }
  return true;
}

namespace {

// Shared layout of NSGAME/NSSTRAT: "questions n1 n2", "answers m1 m2".
struct Header {
  int n1, n2, m1, m2;
};

Header read_dims(detail::LineReader& lr) {
  std::vector<std::string> t;
  Header h;
  if (!lr.next(t) || t.size() != 3 || t[0] != "questions")
    lr.fail("expected 'questions <n1> <n2>'");
  h.n1 = lr.parse_int(t[1]);
  h.n2 = lr.parse_int(t[2]);
  if (!lr.next(t) || t.size() != 3 || t[0] != "answers")
    lr.fail("expected 'answers <m1> <m2>'");
  h.m1 = lr.parse_int(t[1]);
  h.m2 = lr.parse_int(t[2]);
  if (h.n1 <= 0 || h.n2 <= 0 || h.m1 <= 0 || h.m2 <= 0)
    lr.fail("set sizes must be positive");
  return h;
}

}  // namespace

Game read_game(std::istream& in) {
  detail::LineReader lr(in);
  std::vector<std::string> t;
  if (!lr.next(t) || t.size() != 2 || t[0] != "NSGAME" || t[1] != "1")
    lr.fail("expected header 'NSGAME 1'");
  Header h = read_dims(lr);

  Game g;
  g.q1_count = h.n1;
  g.q2_count = h.n2;
  g.a1_count = h.m1;
  g.a2_count = h.m2;
  g.pi.assign(static_cast<std::size_t>(h.n1) * h.n2, Rational(0));
  g.payoff.assign(g.pi.size() * h.m1 * h.m2, Rational(0));

  if (!lr.next(t) || t.size() != 1 || t[0] != "pi")
    lr.fail("expected 'pi' section");
  enum { Pi, R } section = Pi;
  while (lr.next(t)) {
    if (t.size() == 1 && t[0] == "R") {
      if (section == R) lr.fail("duplicate 'R' section");
      section = R;
      continue;
    }
    if (section == Pi) {
      if (t.size() != 3) lr.fail("expected '<q1> <q2> <value>'");
      int q1 = lr.parse_int(t[0]), q2 = lr.parse_int(t[1]);
      if (q1 < 0 || q1 >= h.n1 || q2 < 0 || q2 >= h.n2)
        lr.fail("question index out of range");
      g.pi[g.pi_index(q1, q2)] = lr.parse_rat(t[2]);
    } else {
      if (t.size() != 5) lr.fail("expected '<q1> <q2> <a1> <a2> <value>'");
      int q1 = lr.parse_int(t[0]), q2 = lr.parse_int(t[1]);
      int a1 = lr.parse_int(t[2]), a2 = lr.parse_int(t[3]);
      if (q1 < 0 || q1 >= h.n1 || q2 < 0 || q2 >= h.n2 || a1 < 0 ||
          a1 >= h.m1 || a2 < 0 || a2 >= h.m2)
        lr.fail("index out of range");
      g.payoff[g.payoff_index(q1, q2, a1, a2)] = lr.parse_rat(t[4]);
    }
  }
  if (section != R) lr.fail("missing 'R' section");
  return validate_game(g);
}

void write_game(std::ostream& out, const Game& g) {
  out << "NSGAME 1\n";
  out << "questions " << g.q1_count << " " << g.q2_count << "\n";
  out << "answers " << g.a1_count << " " << g.a2_count << "\n";
  out << "pi\n";
  for (int q1 = 0; q1 < g.q1_count; ++q1)
    for (int q2 = 0; q2 < g.q2_count; ++q2)
      if (g.pi_at(q1, q2) != 0)
        out << q1 << " " << q2 << " " << to_fraction_string(g.pi_at(q1, q2))
            << "\n";
  out << "R\n";
  for (int q1 = 0; q1 < g.q1_count; ++q1)
    for (int q2 = 0; q2 < g.q2_count; ++q2)
      for (int a1 = 0; a1 < g.a1_count; ++a1)
        for (int a2 = 0; a2 < g.a2_count; ++a2)
          if (g.payoff_at(q1, q2, a1, a2) != 0)
            out << q1 << " " << q2 << " " << a1 << " " << a2 << " "
                << to_fraction_string(g.payoff_at(q1, q2, a1, a2)) << "\n";
}

Strategy read_strategy(std::istream& in) {
  detail::LineReader lr(in);
  std::vector<std::string> t;
  if (!lr.next(t) || t.size() != 2 || t[0] != "NSSTRAT" || t[1] != "1")
    lr.fail("expected header 'NSSTRAT 1'");
  Header h = read_dims(lr);

  Strategy s;
  s.q1_count = h.n1;
  s.q2_count = h.n2;
  s.a1_count = h.m1;
  s.a2_count = h.m2;
  s.p.assign(static_cast<std::size_t>(h.n1) * h.n2 * h.m1 * h.m2, Rational(0));
  while (lr.next(t)) {
    if (t.size() != 5) lr.fail("expected '<q1> <q2> <a1> <a2> <value>'");
    int q1 = lr.parse_int(t[0]), q2 = lr.parse_int(t[1]);
    int a1 = lr.parse_int(t[2]), a2 = lr.parse_int(t[3]);
    if (q1 < 0 || q1 >= h.n1 || q2 < 0 || q2 >= h.n2 || a1 < 0 || a1 >= h.m1 ||
        a2 < 0 || a2 >= h.m2)
      lr.fail("index out of range");
    s.at(q1, q2, a1, a2) = lr.parse_rat(t[4]);
  }
  return s;
}

void write_strategy(std::ostream& out, const Strategy& s) {
  out << "NSSTRAT 1\n";
  out << "questions " << s.q1_count << " " << s.q2_count << "\n";
  out << "answers " << s.a1_count << " " << s.a2_count << "\n";
  for (int q1 = 0; q1 < s.q1_count; ++q1)
    for (int q2 = 0; q2 < s.q2_count; ++q2)
      for (int a1 = 0; a1 < s.a1_count; ++a1)
        for (int a2 = 0; a2 < s.a2_count; ++a2)
          if (s.at(q1, q2, a1, a2) != 0)
            out << q1 << " " << q2 << " " << a1 << " " << a2 << " "
                << to_fraction_string(s.at(q1, q2, a1, a2)) << "\n";
}

namespace {
std::ifstream open_or_throw(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open file: " + path);
  return f;
}
}  // namespace

Game read_game_file(const std::string& path) {
  auto f = open_or_throw(path);
  return read_game(f);
}

Strategy read_strategy_file(const std::string& path) {
  auto f = open_or_throw(path);
  return read_strategy(f);
}

}  // namespace nsg
