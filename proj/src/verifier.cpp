#include "nsg/verifier.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "nsg/errors.hpp"
#include "parse_util.hpp"

namespace nsg {

Game compile_game(const VerifierSpec& spec, int max_randomness_bits) {
  if (spec.randomness_bits < 0 || spec.randomness_bits > max_randomness_bits)
    throw EnumerationTooLarge("2^" + std::to_string(spec.randomness_bits) +
                              " random strings exceeds the enumeration guard");
  if (spec.a1_count <= 0 || spec.a2_count <= 0)
    throw IncompleteSpec("answer alphabet sizes must be positive");
  const std::uint64_t num_r = std::uint64_t(1) << spec.randomness_bits;
  if (spec.question_map.size() != num_r)
    throw IncompleteSpec("question map must cover all 2^l random strings");
  if (spec.predicate.size() != num_r)
    throw IncompleteSpec("predicate must cover all 2^l random strings");
  const std::size_t num_answers =
      static_cast<std::size_t>(spec.a1_count) * spec.a2_count;
  for (const auto& row : spec.predicate)
    if (row.size() != num_answers)
      throw IncompleteSpec("predicate row does not cover all answer pairs");

  int n1 = 0, n2 = 0;
  for (auto [q1, q2] : spec.question_map) {
    if (q1 < 0 || q2 < 0) throw IncompleteSpec("negative question index");
    n1 = std::max(n1, q1 + 1);
    n2 = std::max(n2, q2 + 1);
  }

  // Single pass with integer counters; division deferred to the end.
  Game g;
  g.q1_count = n1;
  g.q2_count = n2;
  g.a1_count = spec.a1_count;
  g.a2_count = spec.a2_count;
  std::vector<std::int64_t> pair_count(static_cast<std::size_t>(n1) * n2, 0);
  std::vector<std::int64_t> acc_count(pair_count.size() * num_answers, 0);
  for (std::uint64_t r = 0; r < num_r; ++r) {
    auto [q1, q2] = spec.question_map[r];
    std::size_t qi = static_cast<std::size_t>(q1) * n2 + q2;
    ++pair_count[qi];
    const auto& row = spec.predicate[r];
    for (std::size_t a = 0; a < num_answers; ++a)
      if (row[a]) ++acc_count[qi * num_answers + a];
  }

  g.pi.resize(pair_count.size());
  g.payoff.assign(acc_count.size(), Rational(0));
  for (std::size_t qi = 0; qi < pair_count.size(); ++qi) {
    g.pi[qi] = Rational(pair_count[qi], static_cast<long>(num_r));
    g.pi[qi].canonicalize();
    if (pair_count[qi] == 0) continue;
    for (std::size_t a = 0; a < num_answers; ++a) {
      Rational v(acc_count[qi * num_answers + a], pair_count[qi]);
      v.canonicalize();
      g.payoff[qi * num_answers + a] = v;
    }
  }
  return validate_game(g);
}

VerifierSpec read_verifier(std::istream& in) {
  detail::LineReader lr(in);
  std::vector<std::string> t;
  if (!lr.next(t) || t.size() != 2 || t[0] != "NSVERIFIER" || t[1] != "1")
    lr.fail("expected header 'NSVERIFIER 1'");
  if (!lr.next(t) || t.size() != 2 || t[0] != "randbits")
    lr.fail("expected 'randbits <l>'");
  VerifierSpec spec;
  spec.randomness_bits = lr.parse_int(t[1]);
  if (spec.randomness_bits < 0 || spec.randomness_bits > 62)
    lr.fail("randbits out of range");
  if (!lr.next(t) || t.size() != 3 || t[0] != "answers")
    lr.fail("expected 'answers <m1> <m2>'");
  spec.a1_count = lr.parse_int(t[1]);
  spec.a2_count = lr.parse_int(t[2]);
  if (spec.a1_count <= 0 || spec.a2_count <= 0)
    lr.fail("answer alphabet sizes must be positive");

  const std::uint64_t num_r = std::uint64_t(1) << spec.randomness_bits;
  const std::size_t num_answers =
      static_cast<std::size_t>(spec.a1_count) * spec.a2_count;
  spec.question_map.assign(num_r, {-1, -1});
  spec.predicate.assign(num_r, std::vector<uint8_t>(num_answers, 0));
  while (lr.next(t)) {
    if (t[0] == "map") {
      if (t.size() != 4) lr.fail("expected 'map <r> <q1> <q2>'");
      long long r = std::stoll(t[1]);
      if (r < 0 || static_cast<std::uint64_t>(r) >= num_r)
        lr.fail("random string index out of range");
      spec.question_map[r] = {lr.parse_int(t[2]), lr.parse_int(t[3])};
    } else if (t[0] == "acc") {
      if (t.size() != 4) lr.fail("expected 'acc <r> <a1> <a2>'");
      long long r = std::stoll(t[1]);
      int a1 = lr.parse_int(t[2]), a2 = lr.parse_int(t[3]);
      if (r < 0 || static_cast<std::uint64_t>(r) >= num_r)
        lr.fail("random string index out of range");
      if (a1 < 0 || a1 >= spec.a1_count || a2 < 0 || a2 >= spec.a2_count)
        lr.fail("answer index out of range");
      spec.predicate[r][static_cast<std::size_t>(a1) * spec.a2_count + a2] = 1;
    } else {
      lr.fail("expected 'map' or 'acc' line");
    }
  }
  for (std::uint64_t r = 0; r < num_r; ++r)
    if (spec.question_map[r].first < 0)
      throw IncompleteSpec("no 'map' line for random string " +
                           std::to_string(r));
  return spec;
}

void write_verifier(std::ostream& out, const VerifierSpec& spec) {
  out << "NSVERIFIER 1\n";
  out << "randbits " << spec.randomness_bits << "\n";
  out << "answers " << spec.a1_count << " " << spec.a2_count << "\n";
  const std::uint64_t num_r = std::uint64_t(1) << spec.randomness_bits;
  for (std::uint64_t r = 0; r < num_r; ++r)
    out << "map " << r << " " << spec.question_map[r].first << " "
        << spec.question_map[r].second << "\n";
  for (std::uint64_t r = 0; r < num_r; ++r)
    for (int a1 = 0; a1 < spec.a1_count; ++a1)
      for (int a2 = 0; a2 < spec.a2_count; ++a2)
        if (spec.accepts(r, a1, a2))
          out << "acc " << r << " " << a1 << " " << a2 << "\n";
}

VerifierSpec read_verifier_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open file: " + path);
  return read_verifier(f);
}

}  // namespace nsg
