#pragma once

#include <cstdint>
#include <vector>

namespace adl {

enum class RowSense { Le, Ge, Eq };

struct LpRow {
  std::vector<double> coeffs;  // dense, one per variable
  RowSense sense = RowSense::Le;
  double rhs = 0.0;
};

// Minimize objective . x subject to the rows; every variable is >= 0.
struct LpProblem {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<LpRow> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

struct LpSolution {
  LpStatus status = LpStatus::IterLimit;
  std::vector<double> x;
  double objective = 0.0;
  int64_t iterations = 0;
};

// Dense two-phase simplex.  Dantzig pricing switches to Bland's rule
// permanently after a degenerate stall, so cycling cannot occur; all
// tie-breaks are by minimum index and the result is deterministic.
LpSolution lp_solve(const LpProblem& p);

}  // namespace adl
