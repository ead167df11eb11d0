#include <doctest.h>

#include <sstream>

#include "nsg/errors.hpp"
#include "nsg/mpc.hpp"
#include "test_support.hpp"

using namespace nsg;

namespace {

MPCInstance tiny_feasible() {
  // x1 + x2 <= 2, x1 >= 1, x2 >= 1/2: feasible (e.g. x = (1, 1/2)).
  MPCInstance inst;
  inst.num_vars = 2;
  inst.packing = {{0, 0, Rational(1)}, {0, 1, Rational(1)}};
  inst.b = {Rational(2)};
  inst.covering = {{0, 0, Rational(1)}, {1, 1, Rational(1)}};
  inst.d = {Rational(1), Rational(1, 2)};
  return inst;
}

MPCInstance tiny_infeasible() {
  // x1 <= 1 but 2*x1 >= 3.
  MPCInstance inst;
  inst.num_vars = 1;
  inst.packing = {{0, 0, Rational(1)}};
  inst.b = {Rational(1)};
  inst.covering = {{0, 0, Rational(2)}};
  inst.d = {Rational(3)};
  return inst;
}

}  // namespace

TEST_CASE("instance validation") {
  MPCInstance inst = tiny_feasible();
  inst.check();
  SUBCASE("negative matrix entry") {
    inst.packing[0].value = Rational(-1);
    CHECK_THROWS_AS(inst.check(), NegativeEntry);
  }
  SUBCASE("negative rhs") {
    inst.d[0] = Rational(-1);
    CHECK_THROWS_AS(inst.check(), NegativeEntry);
  }
  SUBCASE("out-of-range column") {
    inst.covering.push_back({0, 5, Rational(1)});
    CHECK_THROWS_AS(inst.check(), DimensionMismatch);
  }
}

TEST_CASE("exact verification of candidate points") {
  MPCInstance inst = tiny_feasible();
  CHECK(verify_approx_solution(inst, {Rational(1), Rational(1, 2)}, 1));
  CHECK(verify_approx_solution(inst, {Rational(3, 2), Rational(1, 2)}, 1));
  // Packing overshoot allowed only up to the factor r.
  CHECK(!verify_approx_solution(inst, {Rational(3, 2), Rational(1)}, 1));
  CHECK(verify_approx_solution(inst, {Rational(3, 2), Rational(1)},
                               Rational(5, 4)));
  // Covering shortfalls and negativity are never allowed.
  CHECK(!verify_approx_solution(inst, {Rational(1), Rational(0)}, 2));
  CHECK(!verify_approx_solution(inst, {Rational(-1), Rational(1)}, 2));
}

TEST_CASE("exact oracle on the tiny instances") {
  auto x = exact_feasible_point(tiny_feasible());
  REQUIRE(x.has_value());
  CHECK(verify_approx_solution(tiny_feasible(), *x, 1));
  CHECK(!exact_feasible_point(tiny_infeasible()).has_value());
}

TEST_CASE("solver finds approximate solutions on feasible instances") {
  for (double eps : {0.3, 0.05}) {
    MPCOutcome out = solve_mpc(tiny_feasible(), eps);
    REQUIRE(out.kind == MPCKind::Approx);
    CHECK(verify_approx_solution(tiny_feasible(), out.x,
                                 1 + rational_from_double(eps)));
  }
}

TEST_CASE("solver rejects the infeasible instance") {
  MPCOutcome out = solve_mpc(tiny_infeasible(), 0.1);
  CHECK(out.kind == MPCKind::Infeasible);
}

TEST_CASE("edge cases") {
  SUBCASE("no covering rows means x = 0 works") {
    MPCInstance inst;
    inst.num_vars = 3;
    inst.packing = {{0, 0, Rational(5)}, {0, 2, Rational(7)}};
    inst.b = {Rational(1)};
    MPCOutcome out = solve_mpc(inst, 0.2);
    REQUIRE(out.kind == MPCKind::Approx);
    CHECK(verify_approx_solution(inst, out.x, 1));
  }
  SUBCASE("zero-budget packing row forces columns to zero") {
    MPCInstance inst;
    inst.num_vars = 2;
    inst.packing = {{0, 0, Rational(1)}};
    inst.b = {Rational(0)};
    inst.covering = {{0, 0, Rational(1)}, {0, 1, Rational(1)}};
    inst.d = {Rational(1)};
    MPCOutcome out = solve_mpc(inst, 0.2);
    REQUIRE(out.kind == MPCKind::Approx);
    CHECK(out.x[0] == 0);
    CHECK(out.x[1] >= 1);
  }
  SUBCASE("zero-budget row can make covering impossible") {
    MPCInstance inst;
    inst.num_vars = 1;
    inst.packing = {{0, 0, Rational(1)}};
    inst.b = {Rational(0)};
    inst.covering = {{0, 0, Rational(1)}};
    inst.d = {Rational(1)};
    CHECK(solve_mpc(inst, 0.2).kind == MPCKind::Infeasible);
  }
  SUBCASE("covering row with no support is infeasible") {
    MPCInstance inst;
    inst.num_vars = 2;
    inst.packing = {{0, 0, Rational(1)}};
    inst.b = {Rational(4)};
    inst.covering = {{0, 0, Rational(1)}};
    inst.d = {Rational(1), Rational(1)};  // second row is empty
    CHECK(solve_mpc(inst, 0.2).kind == MPCKind::Infeasible);
  }
  SUBCASE("invalid epsilon") {
    CHECK_THROWS_AS(solve_mpc(tiny_feasible(), 0.0), InvalidEpsilon);
    CHECK_THROWS_AS(solve_mpc(tiny_feasible(), 1.5), InvalidEpsilon);
  }
}

TEST_CASE("solver agrees with the exact oracle on random instances") {
  testsupport::Rng rng(5100);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    MPCInstance inst = testsupport::random_mpc(rng);
    bool truth = exact_feasible_point(inst).has_value();
    double eps = (trial % 2) ? 0.2 : 0.05;
    MPCOutcome out = solve_mpc(inst, eps);
    if (truth) {
      ++feasible_seen;
      // Feasible instances must never be called infeasible.
      REQUIRE(out.kind == MPCKind::Approx);
      CHECK(verify_approx_solution(inst, out.x,
                                   1 + rational_from_double(eps)));
    } else {
      ++infeasible_seen;
      // Infeasible instances may still admit a (1+eps)-approximate point;
      // either verdict is within contract, but Approx must verify.
      if (out.kind == MPCKind::Approx)
        CHECK(verify_approx_solution(inst, out.x,
                                     1 + rational_from_double(eps)));
    }
  }
  CHECK(feasible_seen > 10);
  CHECK(infeasible_seen > 10);
}

TEST_CASE("force_exact matches the default path") {
  testsupport::Rng rng(5101);
  MPCSolveOptions exact_opts;
  exact_opts.force_exact = true;
  for (int trial = 0; trial < 30; ++trial) {
    MPCInstance inst = testsupport::random_mpc(rng, 12);
    MPCOutcome a = solve_mpc(inst, 0.1);
    MPCOutcome b = solve_mpc(inst, 0.1, exact_opts);
    // The exact path settles true feasibility; the default path may only
    // differ by answering Approx on an infeasible-but-close instance.
    if (b.kind == MPCKind::Approx) CHECK(a.kind == MPCKind::Approx);
  }
}

TEST_CASE("thread count does not change the result") {
  testsupport::Rng rng(5102);
  for (int trial = 0; trial < 12; ++trial) {
    MPCInstance inst = testsupport::random_mpc(rng);
    MPCSolveOptions one, four;
    four.threads = 4;
    MPCOutcome a = solve_mpc(inst, 0.1, one);
    MPCOutcome b = solve_mpc(inst, 0.1, four);
    CHECK(a.kind == b.kind);
    CHECK(a.rounds == b.rounds);
    CHECK(a.x == b.x);
  }
}

TEST_CASE("mpc text format round-trips") {
  MPCInstance inst = tiny_feasible();
  std::stringstream buf;
  write_mpc(buf, inst);
  MPCInstance back = read_mpc(buf);
  CHECK(back.num_vars == inst.num_vars);
  CHECK(back.b == inst.b);
  CHECK(back.d == inst.d);
  REQUIRE(back.packing.size() == inst.packing.size());
  for (std::size_t i = 0; i < inst.packing.size(); ++i) {
    CHECK(back.packing[i].row == inst.packing[i].row);
    CHECK(back.packing[i].col == inst.packing[i].col);
    CHECK(back.packing[i].value == inst.packing[i].value);
  }

  std::istringstream bad("MPC 2\n");
  CHECK_THROWS_AS(read_mpc(bad), ParseError);
}
