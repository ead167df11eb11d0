#include "nsg/simplex.hpp"

#include <algorithm>
#include <cstddef>

#include "nsg/errors.hpp"

namespace nsg {

namespace {

// Dense rational tableau. Columns: structural (split for free variables),
// then slack/surplus, then artificial; last entry of each row is the rhs.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : lp_(lp) {
    // Column layout for structural variables.
    col_of_var_.reserve(lp.num_vars());
    for (int v = 0; v < lp.num_vars(); ++v) {
      col_of_var_.push_back({next_col_, -1});
      ++next_col_;
      if (!lp.nonneg[v]) {
        col_of_var_.back().second = next_col_;
        ++next_col_;
      }
    }
    structural_cols_ = next_col_;

    int num_slack = 0, num_art = 0;
    for (const auto& row : lp.rows) {
      bool flip = row.rhs < 0;
      Relation rel = row.relation;
      if (flip)
        rel = rel == Relation::LessEq    ? Relation::GreaterEq
              : rel == Relation::GreaterEq ? Relation::LessEq
                                           : Relation::Equal;
      if (rel != Relation::Equal) ++num_slack;
      if (rel != Relation::LessEq) ++num_art;
    }
    first_slack_ = structural_cols_;
    first_art_ = first_slack_ + num_slack;
    num_cols_ = first_art_ + num_art;

    const std::size_t m = lp.rows.size();
    rows_.assign(m, std::vector<Rational>(num_cols_ + 1, Rational(0)));
    basis_.assign(m, -1);

    int slack = first_slack_, art = first_art_;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& row = lp.rows[i];
      bool flip = row.rhs < 0;
      Rational sign = flip ? -1 : 1;
      for (const auto& [v, c] : row.coeffs) {
        auto [cp, cm] = col_of_var_[v];
        rows_[i][cp] += sign * c;
        if (cm >= 0) rows_[i][cm] -= sign * c;
      }
      rows_[i][num_cols_] = sign * row.rhs;
      Relation rel = row.relation;
      if (flip)
        rel = rel == Relation::LessEq    ? Relation::GreaterEq
              : rel == Relation::GreaterEq ? Relation::LessEq
                                           : Relation::Equal;
      switch (rel) {
        case Relation::LessEq:
          rows_[i][slack] = 1;
          basis_[i] = slack++;
          break;
        case Relation::GreaterEq:
          rows_[i][slack++] = -1;
          rows_[i][art] = 1;
          basis_[i] = art++;
          break;
        case Relation::Equal:
          rows_[i][art] = 1;
          basis_[i] = art++;
          break;
      }
    }
  }

  // Minimizes sum of artificials. Returns false if the minimum is nonzero.
  bool phase1() {
    obj_.assign(num_cols_ + 1, Rational(0));
    for (int j = first_art_; j < num_cols_; ++j) obj_[j] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] >= first_art_) subtract_row(obj_, rows_[i], Rational(1));
    run(/*allow_artificial=*/true);
    if (-obj_[num_cols_] != 0) return false;
    drive_out_artificials();
    return true;
  }

  // Requires a feasible basis from phase1(). Returns false on unbounded.
  bool phase2() {
    obj_.assign(num_cols_ + 1, Rational(0));
    Rational sign = lp_.sense == Sense::Maximize ? -1 : 1;
    for (const auto& [v, c] : lp_.objective) {
      auto [cp, cm] = col_of_var_[v];
      obj_[cp] += sign * c;
      if (cm >= 0) obj_[cm] -= sign * c;
    }
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (obj_[basis_[i]] != 0)
        subtract_row(obj_, rows_[i], Rational(obj_[basis_[i]]));
    return run(/*allow_artificial=*/false);
  }

  std::vector<Rational> extract_solution() const {
    std::vector<Rational> col_val(num_cols_, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i)
      col_val[basis_[i]] = rows_[i][num_cols_];
    std::vector<Rational> x(lp_.num_vars());
    for (int v = 0; v < lp_.num_vars(); ++v) {
      auto [cp, cm] = col_of_var_[v];
      x[v] = col_val[cp];
      if (cm >= 0) x[v] -= col_val[cm];
    }
    return x;
  }

 private:
  static void subtract_row(std::vector<Rational>& target,
                           const std::vector<Rational>& src,
                           const Rational& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < src.size(); ++j)
      if (src[j] != 0) target[j] -= factor * src[j];
  }

  // Pivots until optimal or unbounded; returns false on unbounded.
  bool run(bool allow_artificial) {
    const int limit_cols = allow_artificial ? num_cols_ : first_art_;
    const long bland_after =
        200 + 20 * static_cast<long>(rows_.size() + num_cols_);
    long iterations = 0;
    for (;;) {
      int enter = -1;
      if (iterations < bland_after) {
        const Rational* best = nullptr;
        for (int j = 0; j < limit_cols; ++j)
          if (obj_[j] < 0 && (best == nullptr || obj_[j] < *best)) {
            best = &obj_[j];
            enter = j;
          }
      } else {
        for (int j = 0; j < limit_cols; ++j)
          if (obj_[j] < 0) {
            enter = j;
            break;
          }
      }
      if (enter < 0) return true;

      // Ratio test; ties broken by smallest basis index (Bland).
      int leave = -1;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][enter];
        if (a <= 0) continue;
        Rational ratio = rows_[i][num_cols_] / a;
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave]))
          {
            leave = static_cast<int>(i);
            best_ratio = ratio;
          }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
      ++iterations;
    }
  }

  void pivot(int r, int s) {
    auto& prow = rows_[r];
    Rational inv = prow[s];
    if (inv != 1)
      for (auto& v : prow)
        if (v != 0) v /= inv;
    prow[s] = 1;  // guard against any residue
    pivot_nonzeros_.clear();
    for (int j = 0; j <= num_cols_; ++j)
      if (prow[j] != 0) pivot_nonzeros_.push_back(j);

    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      auto& row = rows_[i];
      if (row[s] == 0) continue;
      Rational f = row[s];
      for (int j : pivot_nonzeros_) row[j] -= f * prow[j];
      row[s] = 0;
    }
    if (obj_[s] != 0) {
      Rational f = obj_[s];
      for (int j : pivot_nonzeros_) obj_[j] -= f * prow[j];
      obj_[s] = 0;
    }
    basis_[r] = s;
  }

  // After phase 1 at objective 0, replace basic artificials by structural
  // columns, dropping rows that turn out redundant.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < first_art_) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < first_art_; ++j)
        if (rows_[i][j] != 0) {
          col = j;
          break;
        }
      if (col >= 0) {
        pivot(static_cast<int>(i), col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  const LinearProgram& lp_;
  std::vector<std::pair<int, int>> col_of_var_;  // (plus col, minus col or -1)
  int next_col_ = 0;
  int structural_cols_ = 0;
  int first_slack_ = 0;
  int first_art_ = 0;
  int num_cols_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> obj_;
  std::vector<int> basis_;
  std::vector<int> pivot_nonzeros_;
};

Rational evaluate_objective(const LinearProgram& lp,
                            const std::vector<Rational>& x) {
  Rational v = 0;
  for (const auto& [var, c] : lp.objective) v += c * x[var];
  return v;
}

}  // namespace

LpSolution solve_exact(const LinearProgram& lp) {
  Tableau t(lp);
  LpSolution sol;
  if (!t.phase1()) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  if (!t.phase2()) {
    sol.status = LpStatus::Unbounded;
    sol.values = t.extract_solution();
    return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.values = t.extract_solution();
  sol.objective = evaluate_objective(lp, sol.values);
  return sol;
}

LpSolution solve_feasibility(const LinearProgram& lp) {
  Tableau t(lp);
  LpSolution sol;
  if (!t.phase1()) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.values = t.extract_solution();
  sol.objective = evaluate_objective(lp, sol.values);
  return sol;
}

}  // namespace nsg
