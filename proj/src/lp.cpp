#include "adl/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace adl {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;
constexpr int64_t kIterCap = 1000000;
constexpr int kStallWindow = 200;

struct Tableau {
  int m = 0;
  int cols = 0;            // structural + slack (+ artificial during phase 1)
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<int> basis;  // column basic in each row

  void pivot(int row, int col) {
    const double p = a[row][col];
    for (int j = 0; j < cols; ++j) a[row][j] /= p;
    b[row] /= p;
    a[row][col] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = a[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
      a[i][col] = 0.0;
      if (b[i] < 0.0 && b[i] > -1e-12) b[i] = 0.0;
    }
    basis[row] = col;
  }
};

// One simplex phase on the given cost vector.  Columns >= banned_from never
// enter the basis.  Returns Optimal, Unbounded, or IterLimit.
LpStatus run_phase(Tableau& t, const std::vector<double>& cost, int banned_from,
                   int64_t& iters) {
  // reduced-cost row for the current basis; basic columns of the tableau
  // form an identity, so subtracting basic-cost multiples of rows is exact
  std::vector<double> z = cost;
  double zval = 0.0;
  for (int i = 0; i < t.m; ++i) {
    const double cb = cost[t.basis[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j < t.cols; ++j) z[j] -= cb * t.a[i][j];
    zval += cb * t.b[i];
  }

  bool bland = false;
  int stall = 0;
  double best_seen = zval;

  while (true) {
    if (++iters > kIterCap) return LpStatus::IterLimit;

    int enter = -1;
    if (bland) {
      for (int j = 0; j < banned_from; ++j)
        if (z[j] < -kCostTol) {
          enter = j;
          break;
        }
    } else {
      double most = -kCostTol;
      for (int j = 0; j < banned_from; ++j)
        if (z[j] < most) {
          most = z[j];
          enter = j;
        }
    }
    if (enter < 0) return LpStatus::Optimal;

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < t.m; ++i) {
      if (t.a[i][enter] <= kPivotTol) continue;
      const double ratio = t.b[i] / t.a[i][enter];
      if (leave < 0 || ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && t.basis[i] < t.basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return LpStatus::Unbounded;

    t.pivot(leave, enter);
    const double dz = z[enter];
    for (int j = 0; j < t.cols; ++j) z[j] -= dz * t.a[leave][j];
    z[enter] = 0.0;
    zval += dz * t.b[leave];

    if (zval < best_seen - 1e-12) {
      best_seen = zval;
      stall = 0;
    } else if (!bland && ++stall >= kStallWindow) {
      bland = true;
    }
  }
}

}  // namespace

LpSolution lp_solve(const LpProblem& p) {
  if (p.num_vars <= 0) throw std::invalid_argument("lp_solve: no variables");
  if (static_cast<int>(p.objective.size()) != p.num_vars)
    throw std::invalid_argument("lp_solve: objective size mismatch");
  for (double c : p.objective)
    if (!std::isfinite(c)) throw std::invalid_argument("lp_solve: non-finite objective");
  for (const auto& r : p.rows) {
    if (static_cast<int>(r.coeffs.size()) != p.num_vars)
      throw std::invalid_argument("lp_solve: row size mismatch");
    if (!std::isfinite(r.rhs)) throw std::invalid_argument("lp_solve: non-finite rhs");
    for (double c : r.coeffs)
      if (!std::isfinite(c)) throw std::invalid_argument("lp_solve: non-finite coefficient");
  }

  const int n = p.num_vars;
  const int m = static_cast<int>(p.rows.size());

  LpSolution sol;
  if (m == 0) {
    // x = 0 is optimal unless some cost is negative
    for (double c : p.objective)
      if (c < 0.0) {
        sol.status = LpStatus::Unbounded;
        return sol;
      }
    sol.status = LpStatus::Optimal;
    sol.x.assign(n, 0.0);
    sol.objective = 0.0;
    return sol;
  }

  // normalize rhs >= 0, count slack columns
  std::vector<LpRow> rows = p.rows;
  int slacks = 0;
  for (auto& r : rows) {
    if (r.rhs < 0.0) {
      r.rhs = -r.rhs;
      for (double& c : r.coeffs) c = -c;
      if (r.sense == RowSense::Le)
        r.sense = RowSense::Ge;
      else if (r.sense == RowSense::Ge)
        r.sense = RowSense::Le;
    }
    if (r.sense != RowSense::Eq) ++slacks;
  }

  Tableau t;
  t.m = m;
  t.cols = n + slacks + m;  // artificial column reserved per row; unused ones stay zero
  t.a.assign(m, std::vector<double>(t.cols, 0.0));
  t.b.resize(m);
  t.basis.assign(m, -1);

  const int art_from = n + slacks;
  int next_slack = n;
  std::vector<bool> is_artificial(t.cols, false);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.a[i][j] = rows[i].coeffs[j];
    t.b[i] = rows[i].rhs;
    if (rows[i].sense == RowSense::Le) {
      t.a[i][next_slack] = 1.0;
      t.basis[i] = next_slack++;
    } else if (rows[i].sense == RowSense::Ge) {
      t.a[i][next_slack] = -1.0;
      ++next_slack;
    }
    if (t.basis[i] < 0) {
      const int art = art_from + i;
      t.a[i][art] = 1.0;
      t.basis[i] = art;
      is_artificial[art] = true;
    }
  }

  std::vector<double> phase1_cost(t.cols, 0.0);
  for (int j = art_from; j < t.cols; ++j)
    if (is_artificial[j]) phase1_cost[j] = 1.0;

  sol.iterations = 0;
  // artificials may leave but never re-enter
  LpStatus st = run_phase(t, phase1_cost, art_from, sol.iterations);
  if (st == LpStatus::IterLimit) {
    sol.status = st;
    return sol;
  }

  double art_sum = 0.0;
  for (int i = 0; i < m; ++i)
    if (is_artificial[t.basis[i]]) art_sum += t.b[i];
  if (st == LpStatus::Unbounded || art_sum > kPhase1Tol) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }

  // drive basic artificials out with degenerate pivots; rows that cannot
  // pivot are redundant and get dropped
  std::vector<bool> drop(m, false);
  for (int i = 0; i < m; ++i) {
    if (!is_artificial[t.basis[i]]) continue;
    int best = -1;
    double mag = kPivotTol;
    for (int j = 0; j < art_from; ++j)
      if (std::abs(t.a[i][j]) > mag) {
        mag = std::abs(t.a[i][j]);
        best = j;
      }
    if (best >= 0)
      t.pivot(i, best);
    else
      drop[i] = true;
  }
  {
    Tableau t2;
    t2.m = 0;
    t2.cols = art_from;
    for (int i = 0; i < m; ++i) {
      if (drop[i]) continue;
      t.a[i].resize(art_from);
      t2.a.push_back(std::move(t.a[i]));
      t2.b.push_back(t.b[i]);
      t2.basis.push_back(t.basis[i]);
      ++t2.m;
    }
    t = std::move(t2);
  }

  std::vector<double> phase2_cost(t.cols, 0.0);
  for (int j = 0; j < n; ++j) phase2_cost[j] = p.objective[j];

  st = run_phase(t, phase2_cost, t.cols, sol.iterations);
  if (st != LpStatus::Optimal) {
    sol.status = st;
    return sol;
  }

  sol.status = LpStatus::Optimal;
  sol.x.assign(n, 0.0);
  for (int i = 0; i < t.m; ++i)
    if (t.basis[i] < n) sol.x[t.basis[i]] = t.b[i];
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += p.objective[j] * sol.x[j];
  return sol;
}

}  // namespace adl
