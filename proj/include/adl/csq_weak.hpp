#pragma once

#include <cstdint>
#include <vector>

#include "adl/bits.hpp"
#include "adl/hypothesis.hpp"
#include "adl/multilinear.hpp"
#include "adl/sqoracle.hpp"

namespace adl {

// Weak learner that sees labels only through correlation queries.  Both
// bits and labels pass through b -> 2b - 1, so the feature g_S multiplies
// (2 x_i - 1) over i in S and the oracle reports E[(2y - 1) g_S(x)].  A
// bounded polynomial over these features with high estimated correlation
// is fit by LP, then thresholded; the grid's best cut is returned.

// Sets S subseteq [n] with |S| <= degree in (size, sequence-lex) order.
struct ParityBasis {
  int n = 0;
  std::vector<CoordSet> sets;

  // degree is clamped to n; the total set count must stay within 2^16
  static ParityBasis up_to_degree(int n, int degree);
};

// prod_{i in S} (2 x_i - 1), always +-1; empty S gives 1
double parity_eval(const CoordSet& s, const BitVector& x);

// One correlation query per basis element at tolerance tau.
std::vector<double> parity_correlations(CsqOracle& oracle, const ParityBasis& basis,
                                        double tau);

struct ParityLpResult {
  std::vector<double> alpha;   // per basis set, each in [-1, 1]
  double objective = 0.0;      // dot(alpha, estimates)
  MultilinearPolynomial poly;  // the same polynomial in the monomial basis
};

// Maximizes dot(alpha, estimates) subject to |alpha_S| <= 1 and
// |sum_S alpha_S g_S(x)| <= 1 at every constraint point.
ParityLpResult solve_parity_lp(const std::vector<double>& estimates, const ParityBasis& basis,
                               const std::vector<BitVector>& constraint_points);

enum class CsqConstraintMode {
  Auto,           // enumerate when feasible, otherwise support + random
  Enumerate,      // all of {0,1}^n; rejected above enumerate_limit
  SupportRandom,  // distribution support plus random hypercube points
};

struct CsqWeakOptions {
  double grid_c = 0.125;  // threshold spacing is grid_c * eps
  CsqConstraintMode mode = CsqConstraintMode::Auto;
  int enumerate_limit = 16;
  int random_constraints = 512;
  uint64_t seed = 0;
};

struct CsqWeakResult {
  Hypothesis hypothesis;
  double est_error = 2.0;  // estimate at the winning threshold
  double threshold = 0.0;
  int thresholds = 0;  // grid size scanned
  ParityLpResult lp;
};

// Estimates all basis correlations at eps / (8 |basis|), fits the LP
// polynomial, and scans thresholds -1, -1 + c eps, ... past 1, checking
// each cut's error with one correlation query at eps / 16.  Whenever some
// monotone disjunction has error <= 1/2 - eps and the degree covers its
// approximator, the returned cut has error <= 1/2 - eps / 16; a scan
// where no cut's estimate clears that bar throws instead of returning.
// With sampled constraint points the fitted polynomial is re-checked on
// fresh random points before thresholding.
CsqWeakResult csq_weak_learner(CsqOracle& oracle, double eps, int degree,
                               const CsqWeakOptions& opts = CsqWeakOptions());

}  // namespace adl
