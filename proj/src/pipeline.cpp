#include "nsg/pipeline.hpp"

#include <string>

#include "nsg/errors.hpp"

namespace nsg {

namespace {

std::string idx2(int a, int b) {
  return "[" + std::to_string(a) + "," + std::to_string(b) + "]";
}
std::string idx3(int a, int b, int c) {
  return "[" + std::to_string(a) + "," + std::to_string(b) + "," +
         std::to_string(c) + "]";
}
std::string idx4(int a, int b, int c, int d) {
  return "[" + std::to_string(a) + "," + std::to_string(b) + "," +
         std::to_string(c) + "," + std::to_string(d) + "]";
}

// Shared variable layout of the primal-side stages: the joint block first,
// then p1, then p2.
struct PrimalLayout {
  int n1, n2, m1, m2;
  int p1_base, p2_base;

  explicit PrimalLayout(const Game& g)
      : n1(g.q1_count), n2(g.q2_count), m1(g.a1_count), m2(g.a2_count) {
    p1_base = n1 * n2 * m1 * m2;
    p2_base = p1_base + n1 * m1;
  }
  int p(int q1, int q2, int a1, int a2) const {
    return ((q1 * n2 + q2) * m1 + a1) * m2 + a2;
  }
  int p1(int q1, int a1) const { return p1_base + q1 * m1 + a1; }
  int p2(int q2, int a2) const { return p2_base + q2 * m2 + a2; }
  int total() const { return p2_base + n2 * m2; }
};

void add_primal_vars(LinearProgram& lp, const Game& g, const char* joint_name) {
  PrimalLayout L(g);
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a1 = 0; a1 < L.m1; ++a1)
        for (int a2 = 0; a2 < L.m2; ++a2)
          lp.add_var(joint_name + idx4(q1, q2, a1, a2));
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int a1 = 0; a1 < L.m1; ++a1) lp.add_var("p1" + idx2(q1, a1));
  for (int q2 = 0; q2 < L.n2; ++q2)
    for (int a2 = 0; a2 < L.m2; ++a2) lp.add_var("p2" + idx2(q2, a2));
}

void require_stage(const LinearProgram& lp, const char* expected) {
  if (lp.stage != expected)
    throw ShapeMismatch("expected a '" + std::string(expected) +
                        "' stage program, got '" + lp.stage + "'");
}

}  // namespace

Rational DualAssignment::objective() const {
  Rational v = 0;
  for (const auto& z : z1) v += z;
  for (const auto& z : z2) v += z;
  return v;
}

LinearProgram build_primal(const Game& g) {
  PrimalLayout L(g);
  LinearProgram lp;
  lp.sense = Sense::Maximize;
  lp.stage = kStagePrimal;
  add_primal_vars(lp, g, "p");

  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a1 = 0; a1 < L.m1; ++a1)
        for (int a2 = 0; a2 < L.m2; ++a2) {
          Rational c = g.pi_at(q1, q2) * g.payoff_at(q1, q2, a1, a2);
          if (c != 0) lp.objective.push_back({L.p(q1, q2, a1, a2), c});
        }

  // Marginal consistency for each player, then normalization per pair.
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a1 = 0; a1 < L.m1; ++a1) {
        auto& row = lp.add_row("con1" + idx3(q1, q2, a1), Relation::Equal, 0);
        for (int a2 = 0; a2 < L.m2; ++a2)
          row.coeffs.push_back({L.p(q1, q2, a1, a2), 1});
        row.coeffs.push_back({L.p1(q1, a1), -1});
      }
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a2 = 0; a2 < L.m2; ++a2) {
        auto& row = lp.add_row("con2" + idx3(q1, q2, a2), Relation::Equal, 0);
        for (int a1 = 0; a1 < L.m1; ++a1)
          row.coeffs.push_back({L.p(q1, q2, a1, a2), 1});
        row.coeffs.push_back({L.p2(q2, a2), -1});
      }
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2) {
      auto& row = lp.add_row("con3" + idx2(q1, q2), Relation::Equal, 1);
      for (int a1 = 0; a1 < L.m1; ++a1)
        for (int a2 = 0; a2 < L.m2; ++a2)
          row.coeffs.push_back({L.p(q1, q2, a1, a2), 1});
    }
  return lp;
}

LinearProgram relax_primal(const LinearProgram& input, const Game& g) {
  require_stage(input, kStagePrimal);
  PrimalLayout L(g);
  if (input.num_vars() != L.total())
    throw ShapeMismatch("primal program does not match the game dimensions");

  LinearProgram lp;
  lp.sense = Sense::Maximize;
  lp.stage = kStageRelaxed;
  lp.var_names = input.var_names;
  lp.nonneg = input.nonneg;
  lp.objective = input.objective;

  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a1 = 0; a1 < L.m1; ++a1) {
        auto& row = lp.add_row("con1" + idx3(q1, q2, a1), Relation::LessEq, 0);
        for (int a2 = 0; a2 < L.m2; ++a2)
          row.coeffs.push_back({L.p(q1, q2, a1, a2), 1});
        row.coeffs.push_back({L.p1(q1, a1), -1});
      }
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a2 = 0; a2 < L.m2; ++a2) {
        auto& row = lp.add_row("con2" + idx3(q1, q2, a2), Relation::LessEq, 0);
        for (int a1 = 0; a1 < L.m1; ++a1)
          row.coeffs.push_back({L.p(q1, q2, a1, a2), 1});
        row.coeffs.push_back({L.p2(q2, a2), -1});
      }
  for (int q1 = 0; q1 < L.n1; ++q1) {
    auto& row = lp.add_row("con3-1[" + std::to_string(q1) + "]",
                           Relation::Equal, 1);
    for (int a1 = 0; a1 < L.m1; ++a1) row.coeffs.push_back({L.p1(q1, a1), 1});
  }
  for (int q2 = 0; q2 < L.n2; ++q2) {
    auto& row = lp.add_row("con3-2[" + std::to_string(q2) + "]",
                           Relation::Equal, 1);
    for (int a2 = 0; a2 < L.m2; ++a2) row.coeffs.push_back({L.p2(q2, a2), 1});
  }
  return lp;
}

LinearProgram scale_by_pi(const LinearProgram& input, const Game& g) {
  require_stage(input, kStageRelaxed);
  PrimalLayout L(g);
  if (input.num_vars() != L.total())
    throw ShapeMismatch("relaxed program does not match the game dimensions");

  LinearProgram lp;
  lp.sense = Sense::Maximize;
  lp.stage = kStageScaled;
  add_primal_vars(lp, g, "x");

  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a1 = 0; a1 < L.m1; ++a1)
        for (int a2 = 0; a2 < L.m2; ++a2) {
          const Rational& r = g.payoff_at(q1, q2, a1, a2);
          if (r != 0) lp.objective.push_back({L.p(q1, q2, a1, a2), r});
        }

  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a1 = 0; a1 < L.m1; ++a1) {
        auto& row = lp.add_row("con1" + idx3(q1, q2, a1), Relation::LessEq, 0);
        for (int a2 = 0; a2 < L.m2; ++a2)
          row.coeffs.push_back({L.p(q1, q2, a1, a2), 1});
        row.coeffs.push_back({L.p1(q1, a1), -g.pi_at(q1, q2)});
      }
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a2 = 0; a2 < L.m2; ++a2) {
        auto& row = lp.add_row("con2" + idx3(q1, q2, a2), Relation::LessEq, 0);
        for (int a1 = 0; a1 < L.m1; ++a1)
          row.coeffs.push_back({L.p(q1, q2, a1, a2), 1});
        row.coeffs.push_back({L.p2(q2, a2), -g.pi_at(q1, q2)});
      }
  for (int q1 = 0; q1 < L.n1; ++q1) {
    auto& row = lp.add_row("con3[" + std::to_string(q1) + "]",
                           Relation::Equal, 1);
    for (int a1 = 0; a1 < L.m1; ++a1) row.coeffs.push_back({L.p1(q1, a1), 1});
  }
  for (int q2 = 0; q2 < L.n2; ++q2) {
    auto& row = lp.add_row("con4[" + std::to_string(q2) + "]",
                           Relation::Equal, 1);
    for (int a2 = 0; a2 < L.m2; ++a2) row.coeffs.push_back({L.p2(q2, a2), 1});
  }
  return lp;
}

namespace {

// Variable layout of the dual-side stages: y1/ybar1 block, y2/ybar2 block,
// then z1, z2.
struct DualLayout {
  int n1, n2, m1, m2;
  int y2_base, z1_base, z2_base;

  explicit DualLayout(const Game& g)
      : n1(g.q1_count), n2(g.q2_count), m1(g.a1_count), m2(g.a2_count) {
    y2_base = n1 * n2 * m1;
    z1_base = y2_base + n1 * n2 * m2;
    z2_base = z1_base + n1;
  }
  int y1(int q1, int q2, int a1) const { return (q1 * n2 + q2) * m1 + a1; }
  int y2(int q1, int q2, int a2) const {
    return y2_base + (q1 * n2 + q2) * m2 + a2;
  }
  int z1(int q1) const { return z1_base + q1; }
  int z2(int q2) const { return z2_base + q2; }
  int total() const { return z2_base + n2; }
};

void add_dual_vars(LinearProgram& lp, const DualLayout& L, const char* y1_name,
                   const char* y2_name, bool z_nonneg) {
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a1 = 0; a1 < L.m1; ++a1)
        lp.add_var(y1_name + idx3(q1, q2, a1));
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a2 = 0; a2 < L.m2; ++a2)
        lp.add_var(y2_name + idx3(q1, q2, a2));
  for (int q1 = 0; q1 < L.n1; ++q1)
    lp.add_var("z1[" + std::to_string(q1) + "]", z_nonneg);
  for (int q2 = 0; q2 < L.n2; ++q2)
    lp.add_var("z2[" + std::to_string(q2) + "]", z_nonneg);
  for (int q1 = 0; q1 < L.n1; ++q1)
    lp.objective.push_back({L.z1(q1), Rational(1)});
  for (int q2 = 0; q2 < L.n2; ++q2)
    lp.objective.push_back({L.z2(q2), Rational(1)});
}

}  // namespace

LinearProgram dualize(const LinearProgram& input, const Game& g) {
  require_stage(input, kStageScaled);
  PrimalLayout PL(g);
  if (input.num_vars() != PL.total())
    throw ShapeMismatch("scaled program does not match the game dimensions");

  DualLayout L(g);
  LinearProgram lp;
  lp.sense = Sense::Minimize;
  lp.stage = kStageDual;
  // z1, z2 are formally free; nonnegativity is implied by the constraints.
  add_dual_vars(lp, L, "y1", "y2", /*z_nonneg=*/false);

  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a1 = 0; a1 < L.m1; ++a1)
        for (int a2 = 0; a2 < L.m2; ++a2) {
          auto& row = lp.add_row("dcon1" + idx4(q1, q2, a1, a2),
                                 Relation::GreaterEq,
                                 g.payoff_at(q1, q2, a1, a2));
          row.coeffs.push_back({L.y1(q1, q2, a1), 1});
          row.coeffs.push_back({L.y2(q1, q2, a2), 1});
        }
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int a1 = 0; a1 < L.m1; ++a1) {
      auto& row = lp.add_row("dcon2" + idx2(q1, a1), Relation::GreaterEq, 0);
      row.coeffs.push_back({L.z1(q1), 1});
      for (int q2 = 0; q2 < L.n2; ++q2)
        if (g.pi_at(q1, q2) != 0)
          row.coeffs.push_back({L.y1(q1, q2, a1), -g.pi_at(q1, q2)});
    }
  for (int q2 = 0; q2 < L.n2; ++q2)
    for (int a2 = 0; a2 < L.m2; ++a2) {
      auto& row = lp.add_row("dcon3" + idx2(q2, a2), Relation::GreaterEq, 0);
      row.coeffs.push_back({L.z2(q2), 1});
      for (int q1 = 0; q1 < L.n1; ++q1)
        if (g.pi_at(q1, q2) != 0)
          row.coeffs.push_back({L.y2(q1, q2, a2), -g.pi_at(q1, q2)});
    }
  return lp;
}

LinearProgram clip_and_complement(const LinearProgram& input, const Game& g) {
  require_stage(input, kStageDual);
  DualLayout L(g);
  if (input.num_vars() != L.total())
    throw ShapeMismatch("dual program does not match the game dimensions");

  auto [pi1, pi2] = marginals(g);
  LinearProgram lp;
  lp.sense = Sense::Minimize;
  lp.stage = kStageFinal;
  add_dual_vars(lp, L, "ybar1", "ybar2", /*z_nonneg=*/true);

  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a1 = 0; a1 < L.m1; ++a1)
        for (int a2 = 0; a2 < L.m2; ++a2) {
          auto& row =
              lp.add_row("fcon1" + idx4(q1, q2, a1, a2), Relation::LessEq,
                         Rational(2) - g.payoff_at(q1, q2, a1, a2));
          row.coeffs.push_back({L.y1(q1, q2, a1), 1});
          row.coeffs.push_back({L.y2(q1, q2, a2), 1});
        }
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int a1 = 0; a1 < L.m1; ++a1) {
      auto& row =
          lp.add_row("fcon2" + idx2(q1, a1), Relation::GreaterEq, pi1[q1]);
      row.coeffs.push_back({L.z1(q1), 1});
      for (int q2 = 0; q2 < L.n2; ++q2)
        if (g.pi_at(q1, q2) != 0)
          row.coeffs.push_back({L.y1(q1, q2, a1), g.pi_at(q1, q2)});
    }
  for (int q2 = 0; q2 < L.n2; ++q2)
    for (int a2 = 0; a2 < L.m2; ++a2) {
      auto& row =
          lp.add_row("fcon3" + idx2(q2, a2), Relation::GreaterEq, pi2[q2]);
      row.coeffs.push_back({L.z2(q2), 1});
      for (int q1 = 0; q1 < L.n1; ++q1)
        if (g.pi_at(q1, q2) != 0)
          row.coeffs.push_back({L.y2(q1, q2, a2), g.pi_at(q1, q2)});
    }
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a1 = 0; a1 < L.m1; ++a1) {
        auto& row = lp.add_row("fcon4" + idx3(q1, q2, a1), Relation::LessEq, 1);
        row.coeffs.push_back({L.y1(q1, q2, a1), 1});
      }
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a2 = 0; a2 < L.m2; ++a2) {
        auto& row = lp.add_row("fcon5" + idx3(q1, q2, a2), Relation::LessEq, 1);
        row.coeffs.push_back({L.y2(q1, q2, a2), 1});
      }
  return lp;
}

Strategy complete_strategy(const Game& g, const RelaxedSolution& relaxed) {
  const int n1 = g.q1_count, n2 = g.q2_count, m1 = g.a1_count,
            m2 = g.a2_count;
  const std::size_t joint = static_cast<std::size_t>(n1) * n2 * m1 * m2;
  if (relaxed.p_tilde.size() != joint ||
      relaxed.p1.size() != static_cast<std::size_t>(n1) * m1 ||
      relaxed.p2.size() != static_cast<std::size_t>(n2) * m2)
    throw InfeasibleInput("relaxed solution does not match game dimensions");

  for (const auto& v : relaxed.p_tilde)
    if (v < 0) throw InfeasibleInput("negative p_tilde entry");
  for (int q1 = 0; q1 < n1; ++q1) {
    Rational sum = 0;
    for (int a1 = 0; a1 < m1; ++a1) sum += relaxed.p1[q1 * m1 + a1];
    if (sum != 1) throw InfeasibleInput("p1 row does not sum to 1");
  }
  for (int q2 = 0; q2 < n2; ++q2) {
    Rational sum = 0;
    for (int a2 = 0; a2 < m2; ++a2) sum += relaxed.p2[q2 * m2 + a2];
    if (sum != 1) throw InfeasibleInput("p2 row does not sum to 1");
  }

  Strategy s;
  s.q1_count = n1;
  s.q2_count = n2;
  s.a1_count = m1;
  s.a2_count = m2;
  s.p.assign(joint, Rational(0));

  std::vector<Rational> slack1(m1), slack2(m2);
  for (int q1 = 0; q1 < n1; ++q1)
    for (int q2 = 0; q2 < n2; ++q2) {
      // Per-answer deficits against the marginals; both sum to the same
      // total mass F left to distribute.
      Rational f1 = 0, f2 = 0;
      for (int a1 = 0; a1 < m1; ++a1) {
        Rational row = 0;
        for (int a2 = 0; a2 < m2; ++a2)
          row += relaxed.p_tilde[g.payoff_index(q1, q2, a1, a2)];
        slack1[a1] = relaxed.p1[q1 * m1 + a1] - row;
        if (slack1[a1] < 0)
          throw InfeasibleInput("p_tilde exceeds the p1 marginal");
        f1 += slack1[a1];
      }
      for (int a2 = 0; a2 < m2; ++a2) {
        Rational col = 0;
        for (int a1 = 0; a1 < m1; ++a1)
          col += relaxed.p_tilde[g.payoff_index(q1, q2, a1, a2)];
        slack2[a2] = relaxed.p2[q2 * m2 + a2] - col;
        if (slack2[a2] < 0)
          throw InfeasibleInput("p_tilde exceeds the p2 marginal");
        f2 += slack2[a2];
      }
      if (f1 != f2)
        throw InfeasibleInput("deficit totals disagree between the players");

      for (int a1 = 0; a1 < m1; ++a1)
        for (int a2 = 0; a2 < m2; ++a2) {
          std::size_t i = g.payoff_index(q1, q2, a1, a2);
          s.p[i] = relaxed.p_tilde[i];
          if (f1 > 0) s.p[i] += slack1[a1] * slack2[a2] / f1;
        }
    }
  return s;
}

MPCInstance build_mpc_instance(const Game& g, const Rational& s) {
  if (s < 0 || s > 1)
    throw InvalidThresholds("objective budget must lie in [0,1]");
  DualLayout L(g);
  auto [pi1, pi2] = marginals(g);

  MPCInstance inst;
  inst.num_vars = L.total();

  // Packing row 0: the objective budget.
  inst.b.push_back(s);
  for (int q1 = 0; q1 < L.n1; ++q1)
    inst.packing.push_back({0, L.z1(q1), Rational(1)});
  for (int q2 = 0; q2 < L.n2; ++q2)
    inst.packing.push_back({0, L.z2(q2), Rational(1)});

  int row = 1;
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a1 = 0; a1 < L.m1; ++a1)
        for (int a2 = 0; a2 < L.m2; ++a2) {
          inst.packing.push_back({row, L.y1(q1, q2, a1), Rational(1)});
          inst.packing.push_back({row, L.y2(q1, q2, a2), Rational(1)});
          inst.b.push_back(Rational(2) - g.payoff_at(q1, q2, a1, a2));
          ++row;
        }
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a1 = 0; a1 < L.m1; ++a1) {
        inst.packing.push_back({row, L.y1(q1, q2, a1), Rational(1)});
        inst.b.push_back(Rational(1));
        ++row;
      }
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a2 = 0; a2 < L.m2; ++a2) {
        inst.packing.push_back({row, L.y2(q1, q2, a2), Rational(1)});
        inst.b.push_back(Rational(1));
        ++row;
      }

  int crow = 0;
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int a1 = 0; a1 < L.m1; ++a1) {
      inst.covering.push_back({crow, L.z1(q1), Rational(1)});
      for (int q2 = 0; q2 < L.n2; ++q2)
        if (g.pi_at(q1, q2) != 0)
          inst.covering.push_back({crow, L.y1(q1, q2, a1), g.pi_at(q1, q2)});
      inst.d.push_back(pi1[q1]);
      ++crow;
    }
  for (int q2 = 0; q2 < L.n2; ++q2)
    for (int a2 = 0; a2 < L.m2; ++a2) {
      inst.covering.push_back({crow, L.z2(q2), Rational(1)});
      for (int q1 = 0; q1 < L.n1; ++q1)
        if (g.pi_at(q1, q2) != 0)
          inst.covering.push_back({crow, L.y2(q1, q2, a2), g.pi_at(q1, q2)});
      inst.d.push_back(pi2[q2]);
      ++crow;
    }
  return inst;
}

DualAssignment unpack_mpc_vector(const Game& g,
                                 const std::vector<Rational>& x) {
  DualLayout L(g);
  if (static_cast<int>(x.size()) != L.total())
    throw DimensionMismatch("vector length does not match the game's layout");
  DualAssignment a;
  a.ybar1.assign(x.begin(), x.begin() + L.y2_base);
  a.ybar2.assign(x.begin() + L.y2_base, x.begin() + L.z1_base);
  a.z1.assign(x.begin() + L.z1_base, x.begin() + L.z2_base);
  a.z2.assign(x.begin() + L.z2_base, x.end());
  return a;
}

bool is_feasible_final(const Game& g, const DualAssignment& a) {
  DualLayout L(g);
  if (a.ybar1.size() != static_cast<std::size_t>(L.y2_base) ||
      a.ybar2.size() != static_cast<std::size_t>(L.z1_base - L.y2_base) ||
      a.z1.size() != static_cast<std::size_t>(L.n1) ||
      a.z2.size() != static_cast<std::size_t>(L.n2))
    return false;
  for (const auto& v : a.ybar1)
    if (v < 0 || v > 1) return false;
  for (const auto& v : a.ybar2)
    if (v < 0 || v > 1) return false;
  for (const auto& v : a.z1)
    if (v < 0) return false;
  for (const auto& v : a.z2)
    if (v < 0) return false;

  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int q2 = 0; q2 < L.n2; ++q2)
      for (int a1 = 0; a1 < L.m1; ++a1)
        for (int a2 = 0; a2 < L.m2; ++a2)
          if (a.ybar1[L.y1(q1, q2, a1)] + a.ybar2[L.y2(q1, q2, a2) - L.y2_base] >
              Rational(2) - g.payoff_at(q1, q2, a1, a2))
            return false;

  auto [pi1, pi2] = marginals(g);
  for (int q1 = 0; q1 < L.n1; ++q1)
    for (int a1 = 0; a1 < L.m1; ++a1) {
      Rational lhs = a.z1[q1];
      for (int q2 = 0; q2 < L.n2; ++q2)
        lhs += g.pi_at(q1, q2) * a.ybar1[L.y1(q1, q2, a1)];
      if (lhs < pi1[q1]) return false;
    }
  for (int q2 = 0; q2 < L.n2; ++q2)
    for (int a2 = 0; a2 < L.m2; ++a2) {
      Rational lhs = a.z2[q2];
      for (int q1 = 0; q1 < L.n1; ++q1)
        lhs += g.pi_at(q1, q2) * a.ybar2[L.y2(q1, q2, a2) - L.y2_base];
      if (lhs < pi2[q2]) return false;
    }
  return true;
}

std::pair<DualAssignment, Rational> repair_approx_solution(
    const Game& g, const Rational& s, const std::vector<Rational>& approx,
    const Rational& eps) {
  if (eps <= 0) throw InvalidEpsilon("eps must be positive");
  MPCInstance inst = build_mpc_instance(g, s);
  if (!verify_approx_solution(inst, approx, Rational(1) + eps))
    throw NotApproxFeasible(
        "input is not a (1+eps)-approximate solution of the instance");

  DualAssignment a = unpack_mpc_vector(g, approx);
  Rational shrink = Rational(1) / (Rational(1) + eps);
  for (auto& v : a.ybar1) v *= shrink;
  for (auto& v : a.ybar2) v *= shrink;
  auto [pi1, pi2] = marginals(g);
  for (int q1 = 0; q1 < g.q1_count; ++q1) a.z1[q1] += eps * pi1[q1];
  for (int q2 = 0; q2 < g.q2_count; ++q2) a.z2[q2] += eps * pi2[q2];

  if (!is_feasible_final(g, a))
    throw NotApproxFeasible("repair produced an infeasible assignment");
  Rational obj = a.objective();
  if (obj > s + 3 * eps)
    throw NotApproxFeasible("repaired objective exceeds s + 3*eps");
  return {std::move(a), std::move(obj)};
}

}  // namespace nsg
