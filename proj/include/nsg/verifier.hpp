#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "nsg/game.hpp"

namespace nsg {

/// Explicit truth-table description of a one-round verifier: l random bits,
/// a question pair per random string and an acceptance predicate. Question
/// indices are arbitrary nonnegative ints; question sets are the images of
/// the map (unused indices get pruned when the compiled game is validated).
struct VerifierSpec {
  int randomness_bits = 0;
  std::vector<std::pair<int, int>> question_map;  // indexed by r, size 2^l
  std::vector<std::vector<uint8_t>> predicate;    // [r][a1 * a2_count + a2]
  int a1_count = 0;
  int a2_count = 0;

  bool accepts(std::uint64_t r, int a1, int a2) const {
    return predicate[r][static_cast<std::size_t>(a1) * a2_count + a2] != 0;
  }
};

/// Enumerates all 2^l random strings and builds the induced game:
/// pi(q1,q2) is the preimage fraction, R(a1,a2|q1,q2) the conditional
/// acceptance frequency. The result is validated (and so pruned).
/// max_randomness_bits guards the enumeration.
Game compile_game(const VerifierSpec& spec, int max_randomness_bits = 24);

// Text format "NSVERIFIER 1".
VerifierSpec read_verifier(std::istream& in);
void write_verifier(std::ostream& out, const VerifierSpec& spec);
VerifierSpec read_verifier_file(const std::string& path);

}  // namespace nsg
