#include "nsg/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <thread>

#include "nsg/errors.hpp"
#include "nsg/linear_program.hpp"
#include "nsg/simplex.hpp"
#include "parse_util.hpp"

namespace nsg {

void MPCInstance::check() const {
  if (num_vars < 0) throw DimensionMismatch("negative variable count");
  auto check_entries = [&](const std::vector<Entry>& entries, int num_rows,
                           const char* what) {
    for (const auto& e : entries) {
      if (e.row < 0 || e.row >= num_rows || e.col < 0 || e.col >= num_vars)
        throw DimensionMismatch(std::string(what) + " entry out of range");
      if (e.value < 0)
        throw NegativeEntry(std::string(what) + " has a negative entry");
    }
  };
  check_entries(packing, num_packing_rows(), "packing matrix");
  check_entries(covering, num_covering_rows(), "covering matrix");
  for (const auto& v : b)
    if (v < 0) throw NegativeEntry("b has a negative entry");
  for (const auto& v : d)
    if (v < 0) throw NegativeEntry("d has a negative entry");
}

bool verify_approx_solution(const MPCInstance& inst,
                            const std::vector<Rational>& x, const Rational& r) {
  if (r < 1) throw InvalidEpsilon("approximation factor must be >= 1");
  if (static_cast<int>(x.size()) != inst.num_vars)
    throw DimensionMismatch("solution length does not match instance");
  for (const auto& v : x)
    if (v < 0) return false;

  std::vector<Rational> ax(inst.num_packing_rows(), Rational(0));
  for (const auto& e : inst.packing) ax[e.row] += e.value * x[e.col];
  for (int i = 0; i < inst.num_packing_rows(); ++i)
    if (ax[i] > r * inst.b[i]) return false;

  std::vector<Rational> cx(inst.num_covering_rows(), Rational(0));
  for (const auto& e : inst.covering) cx[e.row] += e.value * x[e.col];
  for (int i = 0; i < inst.num_covering_rows(); ++i)
    if (cx[i] < inst.d[i]) return false;
  return true;
}

std::optional<std::vector<Rational>> exact_feasible_point(
    const MPCInstance& inst) {
  inst.check();
  LinearProgram lp;
  for (int j = 0; j < inst.num_vars; ++j)
    lp.add_var("x[" + std::to_string(j) + "]");
  std::vector<LinearProgram::Row*> rows;
  for (int i = 0; i < inst.num_packing_rows(); ++i)
    lp.add_row("pack[" + std::to_string(i) + "]", Relation::LessEq, inst.b[i]);
  for (int i = 0; i < inst.num_covering_rows(); ++i)
    lp.add_row("cover[" + std::to_string(i) + "]", Relation::GreaterEq,
               inst.d[i]);
  for (const auto& e : inst.packing)
    lp.rows[e.row].coeffs.push_back({e.col, e.value});
  for (const auto& e : inst.covering)
    lp.rows[inst.num_packing_rows() + e.row].coeffs.push_back(
        {e.col, e.value});

  LpSolution sol = solve_feasibility(lp);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  return sol.values;
}

namespace {

struct Coef {
  int index;  // row id in column lists, column id in row lists
  double value;
};

// Float view of the instance after presolve: columns forced to zero by
// b_i = 0 packing rows are removed, trivial covering rows dropped, rows
// normalized by their right-hand side.
struct FloatView {
  int num_vars = 0;
  std::vector<int> cols;                       // active column -> original
  std::vector<std::vector<Coef>> pack_rows;    // normalized A, by row
  std::vector<std::vector<Coef>> cover_rows;   // normalized C, by row
  std::vector<std::vector<Coef>> pack_cols;    // same data, by column
  std::vector<std::vector<Coef>> cover_cols;
};

enum class PresolveResult { Solved, Infeasible, Continue };

PresolveResult presolve(const MPCInstance& inst, FloatView& view) {
  std::vector<char> removed(inst.num_vars, 1);
  // Columns with no positive covering entry never help; fixing them to zero
  // only slackens the packing side.
  for (const auto& e : inst.covering)
    if (e.value > 0) removed[e.col] = 0;
  for (const auto& e : inst.packing)
    if (inst.b[e.row] == 0 && e.value > 0) removed[e.col] = 1;

  std::vector<char> row_has_support(inst.num_covering_rows(), 0);
  for (const auto& e : inst.covering)
    if (!removed[e.col] && e.value > 0) row_has_support[e.row] = 1;
  bool any_covering = false;
  for (int k = 0; k < inst.num_covering_rows(); ++k) {
    if (inst.d[k] == 0) continue;
    any_covering = true;
    if (!row_has_support[k]) return PresolveResult::Infeasible;
  }
  if (!any_covering) return PresolveResult::Solved;  // x = 0 works

  std::vector<int> col_map(inst.num_vars, -1);
  for (int j = 0; j < inst.num_vars; ++j)
    if (!removed[j]) {
      col_map[j] = static_cast<int>(view.cols.size());
      view.cols.push_back(j);
    }
  view.num_vars = static_cast<int>(view.cols.size());

  std::vector<int> pack_row_map(inst.num_packing_rows(), -1);
  for (int i = 0; i < inst.num_packing_rows(); ++i)
    if (inst.b[i] > 0) {
      pack_row_map[i] = static_cast<int>(view.pack_rows.size());
      view.pack_rows.emplace_back();
    }
  std::vector<int> cover_row_map(inst.num_covering_rows(), -1);
  for (int k = 0; k < inst.num_covering_rows(); ++k)
    if (inst.d[k] > 0) {
      cover_row_map[k] = static_cast<int>(view.cover_rows.size());
      view.cover_rows.emplace_back();
    }

  for (const auto& e : inst.packing) {
    int r = pack_row_map[e.row], c = col_map[e.col];
    if (r < 0 || c < 0 || e.value == 0) continue;
    view.pack_rows[r].push_back(
        {c, Rational(e.value / inst.b[e.row]).get_d()});
  }
  for (const auto& e : inst.covering) {
    int r = cover_row_map[e.row], c = col_map[e.col];
    if (r < 0 || c < 0 || e.value == 0) continue;
    view.cover_rows[r].push_back(
        {c, Rational(e.value / inst.d[e.row]).get_d()});
  }

  view.pack_cols.resize(view.num_vars);
  view.cover_cols.resize(view.num_vars);
  for (int i = 0; i < static_cast<int>(view.pack_rows.size()); ++i)
    for (const auto& [c, val] : view.pack_rows[i])
      view.pack_cols[c].push_back({i, val});
  for (int k = 0; k < static_cast<int>(view.cover_rows.size()); ++k)
    for (const auto& [c, val] : view.cover_rows[k])
      view.cover_cols[c].push_back({k, val});
  return PresolveResult::Continue;
}

enum class AttemptStatus { Solution, InfeasibleCertified, Stuck };

struct Attempt {
  AttemptStatus status = AttemptStatus::Stuck;
  std::vector<double> x;  // over view columns
  long rounds = 0;
};

// Fixed-size chunks processed in index order; results land in per-column
// slots, so the outcome is identical for any thread count.
template <typename Fn>
void parallel_columns(int num_cols, int threads, Fn&& fn) {
  if (threads <= 1 || num_cols < 256) {
    for (int c = 0; c < num_cols; ++c) fn(c);
    return;
  }
  std::vector<std::thread> pool;
  int chunk = (num_cols + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    int lo = t * chunk, hi = std::min(num_cols, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] {
      for (int c = lo; c < hi; ++c) fn(c);
    });
  }
  for (auto& th : pool) th.join();
}

// One multiplicative-weights run at internal tolerance eps_run.
Attempt run_attempt(const FloatView& view, double eps_run, long max_rounds,
                    int threads) {
  const int N = view.num_vars;
  const int M1 = static_cast<int>(view.pack_rows.size());
  const int M2 = static_cast<int>(view.cover_rows.size());
  const double alpha =
      std::log(std::max(M1 + M2, 2)) / std::max(eps_run, 1e-9);

  Attempt att;
  att.x.assign(N, 0.0);
  std::vector<double> u(M1, 0.0);  // normalized packing row values
  std::vector<double> v(M2, 0.0);  // normalized covering row values
  std::vector<char> met(M2, 0);
  int unmet = M2;

  std::vector<double> pack_weight(M1), cover_weight(M2);
  std::vector<double> grad_pack(N), grad_cover(N), col_max_u(N);
  std::vector<char> in_set(N);
  std::vector<double> pack_rowsum(M1), cover_rowsum(M2);

  while (unmet > 0) {
    if (att.rounds >= max_rounds) {
      att.status = AttemptStatus::Stuck;
      return att;
    }
    ++att.rounds;

    // Softmax weights; shifted by the extremes for stability.
    double umax = 0.0;
    for (int i = 0; i < M1; ++i) umax = std::max(umax, u[i]);
    double wp_total = 0.0;
    for (int i = 0; i < M1; ++i) {
      pack_weight[i] = std::exp(alpha * (u[i] - umax));
      wp_total += pack_weight[i];
    }
    double vmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < M2; ++k)
      if (!met[k]) vmin = std::min(vmin, v[k]);
    double wc_total = 0.0;
    for (int k = 0; k < M2; ++k) {
      if (met[k]) {
        cover_weight[k] = 0.0;
        continue;
      }
      cover_weight[k] = std::exp(-alpha * (v[k] - vmin));
      wc_total += cover_weight[k];
    }

    parallel_columns(N, threads, [&](int c) {
      double gp = 0.0, cmax = 0.0;
      for (const auto& [i, val] : view.pack_cols[c]) {
        gp += pack_weight[i] * val;
        cmax = std::max(cmax, u[i]);
      }
      double gc = 0.0;
      for (const auto& [k, val] : view.cover_cols[c])
        if (!met[k]) gc += cover_weight[k] * val;
      grad_pack[c] = M1 > 0 ? gp / wp_total : 0.0;
      grad_cover[c] = gc / wc_total;
      col_max_u[c] = cmax;
    });

    bool any_active = false, certificate = true;
    for (int c = 0; c < N; ++c) {
      bool qualifies = grad_cover[c] > 0 && grad_cover[c] >= grad_pack[c];
      // Infeasibility is certified only if every column with covering pull
      // has strictly larger packing pull.
      if (grad_cover[c] > 0 && grad_cover[c] >= grad_pack[c] * (1.0 - 1e-9))
        certificate = false;
      // Hard cap: never push a packing row past 1 + 2*eps_run.
      if (qualifies && col_max_u[c] >= 1.0 + eps_run) qualifies = false;
      in_set[c] = qualifies;
      any_active |= qualifies;
    }
    if (!any_active) {
      att.status = certificate ? AttemptStatus::InfeasibleCertified
                               : AttemptStatus::Stuck;
      return att;
    }

    // Step size: no normalized row value may grow by more than eps_run.
    std::fill(pack_rowsum.begin(), pack_rowsum.end(), 0.0);
    std::fill(cover_rowsum.begin(), cover_rowsum.end(), 0.0);
    double max_growth = 0.0;
    for (int i = 0; i < M1; ++i) {
      double sum = 0.0;
      for (const auto& [c, val] : view.pack_rows[i])
        if (in_set[c]) sum += val;
      pack_rowsum[i] = sum;
      max_growth = std::max(max_growth, sum);
    }
    for (int k = 0; k < M2; ++k) {
      if (met[k]) continue;
      double sum = 0.0;
      for (const auto& [c, val] : view.cover_rows[k])
        if (in_set[c]) sum += val;
      cover_rowsum[k] = sum;
      max_growth = std::max(max_growth, sum);
    }
    if (max_growth <= 0.0) {
      att.status = AttemptStatus::Stuck;
      return att;
    }
    double step = eps_run / max_growth;

    for (int c = 0; c < N; ++c)
      if (in_set[c]) att.x[c] += step;
    for (int i = 0; i < M1; ++i) u[i] += step * pack_rowsum[i];
    for (int k = 0; k < M2; ++k) {
      if (met[k]) continue;
      v[k] += step * cover_rowsum[k];
      if (v[k] >= 1.0) {
        met[k] = 1;
        --unmet;
      }
    }
  }
  att.status = AttemptStatus::Solution;
  return att;
}

long round_budget(const FloatView& view, double eps_run, double safety) {
  double size = static_cast<double>(view.pack_rows.size() +
                                    view.cover_rows.size() + view.num_vars) +
                4.0;
  double logs = std::log2(size);
  double inv = 1.0 / eps_run;
  double budget = safety * logs * logs * inv * inv;
  return static_cast<long>(std::min(budget, 2.0e9));
}

}  // namespace

MPCOutcome solve_mpc(const MPCInstance& inst, double epsilon,
                     const MPCSolveOptions& options) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw InvalidEpsilon("epsilon must lie in (0,1)");
  inst.check();

  MPCOutcome out;
  out.epsilon = epsilon;

  auto exact_solve = [&](long rounds) {
    out.rounds = rounds;
    auto point = exact_feasible_point(inst);
    if (point) {
      out.kind = MPCKind::Approx;
      out.x = std::move(*point);
    } else {
      out.kind = MPCKind::Infeasible;
    }
    return out;
  };

  if (options.force_exact) return exact_solve(0);

  FloatView view;
  switch (presolve(inst, view)) {
    case PresolveResult::Infeasible:
      out.kind = MPCKind::Infeasible;
      return out;
    case PresolveResult::Solved:
      out.kind = MPCKind::Approx;
      out.x.assign(inst.num_vars, Rational(0));
      return out;
    case PresolveResult::Continue:
      break;
  }

  const bool small_enough = inst.num_vars <= options.exact_fallback_vars;
  const Rational factor = Rational(1) + rational_from_double(epsilon);
  long total_rounds = 0;
  double eps_run = 0.45 * epsilon;
  for (int attempt = 0; attempt < 2; ++attempt, eps_run /= 2) {
    long budget = round_budget(view, eps_run, options.round_safety_factor);
    Attempt att = run_attempt(view, eps_run, budget, options.threads);
    total_rounds += att.rounds;
    out.rounds = total_rounds;
    if (att.status == AttemptStatus::Solution) {
      std::vector<Rational> x(inst.num_vars, Rational(0));
      for (int c = 0; c < view.num_vars; ++c)
        x[view.cols[c]] = rational_from_double(att.x[c]);
      if (verify_approx_solution(inst, x, factor)) {
        out.kind = MPCKind::Approx;
        out.x = std::move(x);
        return out;
      }
      continue;  // float drift; retry tighter
    }
    if (att.status == AttemptStatus::InfeasibleCertified) {
      // Small instances get the claim confirmed exactly.
      if (small_enough) return exact_solve(total_rounds);
      out.kind = MPCKind::Infeasible;
      return out;
    }
    // Stuck: retry with a tighter internal tolerance.
  }

  if (small_enough) return exact_solve(total_rounds);
  out.kind = MPCKind::Infeasible;
  return out;
}

MPCInstance read_mpc(std::istream& in) {
  detail::LineReader lr(in);
  std::vector<std::string> t;
  if (!lr.next(t) || t.size() != 2 || t[0] != "MPC" || t[1] != "1")
    lr.fail("expected header 'MPC 1'");
  if (!lr.next(t) || t.size() != 4 || t[0] != "dims")
    lr.fail("expected 'dims <M1> <M2> <N>'");
  int m1 = lr.parse_int(t[1]), m2 = lr.parse_int(t[2]),
      n = lr.parse_int(t[3]);
  if (m1 < 0 || m2 < 0 || n < 0) lr.fail("dims must be nonnegative");

  MPCInstance inst;
  inst.num_vars = n;
  inst.b.assign(m1, Rational(0));
  inst.d.assign(m2, Rational(0));
  while (lr.next(t)) {
    if (t[0] == "A" || t[0] == "C") {
      if (t.size() != 4) lr.fail("expected '" + t[0] + " <i> <j> <val>'");
      int i = lr.parse_int(t[1]), j = lr.parse_int(t[2]);
      int rows = t[0] == "A" ? m1 : m2;
      if (i < 0 || i >= rows || j < 0 || j >= n)
        lr.fail("matrix index out of range");
      auto& mat = t[0] == "A" ? inst.packing : inst.covering;
      mat.push_back({i, j, lr.parse_rat(t[3])});
    } else if (t[0] == "b" || t[0] == "d") {
      if (t.size() != 3) lr.fail("expected '" + t[0] + " <i> <val>'");
      int i = lr.parse_int(t[1]);
      auto& vec = t[0] == "b" ? inst.b : inst.d;
      if (i < 0 || i >= static_cast<int>(vec.size()))
        lr.fail("vector index out of range");
      vec[i] = lr.parse_rat(t[2]);
    } else {
      lr.fail("expected 'A', 'b', 'C' or 'd' line");
    }
  }
  inst.check();
  return inst;
}

void write_mpc(std::ostream& out, const MPCInstance& inst) {
  out << "MPC 1\n";
  out << "dims " << inst.num_packing_rows() << " " << inst.num_covering_rows()
      << " " << inst.num_vars << "\n";
  for (const auto& e : inst.packing)
    out << "A " << e.row << " " << e.col << " " << to_fraction_string(e.value)
        << "\n";
  for (int i = 0; i < inst.num_packing_rows(); ++i)
    if (inst.b[i] != 0)
      out << "b " << i << " " << to_fraction_string(inst.b[i]) << "\n";
  for (const auto& e : inst.covering)
    out << "C " << e.row << " " << e.col << " " << to_fraction_string(e.value)
        << "\n";
  for (int i = 0; i < inst.num_covering_rows(); ++i)
    if (inst.d[i] != 0)
      out << "d " << i << " " << to_fraction_string(inst.d[i]) << "\n";
}

MPCInstance read_mpc_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open file: " + path);
  return read_mpc(f);
}

}  // namespace nsg
