#pragma once

#include <cstdint>
#include <vector>

#include "adl/dataset.hpp"
#include "adl/hypothesis.hpp"
#include "adl/multilinear.hpp"

namespace adl {

constexpr int64_t kDefaultFeatureCap = 200000;

// All subsets of I with size <= min(d, |I|), ordered by size then lex.
// Throws before materializing anything past the cap.
std::vector<CoordSet> monomial_features(const CoordSet& I, int d,
                                        int64_t feature_cap = kDefaultFeatureCap);

struct L1FitResult {
  MultilinearPolynomial poly;
  double loss = 0.0;     // sum of w_j |poly(x_j) - y_j|
  int degree_used = 0;   // min(requested, |I|)
};

// Weighted L1-optimal polynomial over the degree-d monomial features of I,
// solved as an LP (coefficients split into nonnegative parts, one residual
// pair per distinct example).
L1FitResult l1_fit(const ExplicitDistribution& data, const CoordSet& I, int d,
                   int64_t feature_cap = kDefaultFeatureCap);
L1FitResult l1_fit(const EmpiricalSample& data, const CoordSet& I, int d,
                   int64_t feature_cap = kDefaultFeatureCap);

// Arithmetic grid with eps/8 spacing covering the value range, plus the
// midpoints of consecutive distinct values of p on the data and sentinels
// below and above everything.  The midpoints make the grid minimum equal
// to the minimum over all real thresholds.
std::vector<double> default_threshold_grid(const MultilinearPolynomial& p,
                                           const ExplicitDistribution& data, double eps);
std::vector<double> default_threshold_grid(const MultilinearPolynomial& p,
                                           const EmpiricalSample& data, double eps);

struct RoundResult {
  Hypothesis h;
  double threshold = 0.0;
  double error = 0.0;  // 0-1 error of h on the rounding data
};

// Best grid threshold for h(x) = 1 iff p(x) >= t, ties to the smallest t.
// With the default grid the chosen error never exceeds the L1 loss of p.
RoundResult round_to_hypothesis(const MultilinearPolynomial& p,
                                const ExplicitDistribution& data,
                                const std::vector<double>& grid);
RoundResult round_to_hypothesis(const MultilinearPolynomial& p,
                                const EmpiricalSample& data,
                                const std::vector<double>& grid);

struct L1LearnerResult {
  Hypothesis h;
  double train_error = 0.0;
  double loss = 0.0;
  int degree_used = 0;
  double threshold = 0.0;
};

// Degree choice from the weight-band approximator at eps/4, then fit and
// round.  The band is the largest W_I over the data, so callers restrict
// their data first; training error lands within eps of the best
// disjunction supported on I (the constant 1 included).
L1LearnerResult l1_regress_learner(const ExplicitDistribution& data, const CoordSet& I,
                                   double eps, int64_t feature_cap = kDefaultFeatureCap);
L1LearnerResult l1_regress_learner(const EmpiricalSample& data, const CoordSet& I,
                                   double eps, int64_t feature_cap = kDefaultFeatureCap);

}  // namespace adl
