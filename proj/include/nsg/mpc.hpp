#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "nsg/rational.hpp"

namespace nsg {

/// Mixed packing and covering instance: find x >= 0 with Ax <= b, Cx >= d,
/// all data nonnegative. Matrices are sparse triplet lists.
struct MPCInstance {
  struct Entry {
    int row;
    int col;
    Rational value;
  };

  int num_vars = 0;                 // N
  std::vector<Entry> packing;       // A, M1 x N
  std::vector<Rational> b;          // M1
  std::vector<Entry> covering;      // C, M2 x N
  std::vector<Rational> d;          // M2

  int num_packing_rows() const { return static_cast<int>(b.size()); }
  int num_covering_rows() const { return static_cast<int>(d.size()); }

  /// Throws NegativeEntry / DimensionMismatch if the data is malformed.
  void check() const;
};

enum class MPCKind { Infeasible, Approx };

struct MPCOutcome {
  MPCKind kind = MPCKind::Infeasible;
  std::vector<Rational> x;  // present iff Approx; passes exact verification
  long rounds = 0;          // synchronized iteration count
  double epsilon = 0;
};

struct MPCSolveOptions {
  int threads = 1;
  // Instances with at most this many variables get their Infeasible claims
  // (and any stuck state) resolved by the exact rational oracle.
  int exact_fallback_vars = 2048;
  // Multiplier on the polylog round budget per attempt.
  double round_safety_factor = 64.0;
  // Force the exact oracle path outright (used by tests).
  bool force_exact = false;
};

/// Width-independent multiplicative-weights solver. Either returns a
/// (1+epsilon)-approximate solution (exactly re-verified before reporting)
/// or claims the instance has no exactly feasible solution.
MPCOutcome solve_mpc(const MPCInstance& inst, double epsilon,
                     const MPCSolveOptions& options = {});

/// x >= 0, Ax <= r*b and Cx >= d, componentwise, in exact arithmetic.
bool verify_approx_solution(const MPCInstance& inst,
                            const std::vector<Rational>& x, const Rational& r);

/// Exact rational feasibility oracle; returns a feasible point or nullopt.
std::optional<std::vector<Rational>> exact_feasible_point(
    const MPCInstance& inst);

// Text format "MPC 1".
MPCInstance read_mpc(std::istream& in);
void write_mpc(std::ostream& out, const MPCInstance& inst);
MPCInstance read_mpc_file(const std::string& path);

}  // namespace nsg
