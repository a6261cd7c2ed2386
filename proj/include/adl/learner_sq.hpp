#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "adl/bits.hpp"
#include "adl/hypothesis.hpp"
#include "adl/l1regression.hpp"
#include "adl/region.hpp"
#include "adl/sqoracle.hpp"

namespace adl {

// Query-driven agnostic learner reaching additive error: each iteration
// either bets on a frequent target coordinate and peels off the slab where
// it fires, or prunes frequent coordinates and regresses on the remaining
// low-weight block.  The peeled blocks assemble into a decision list.

struct Alg2Config {
  double eps = 0.1;
  int r = 0;              // 0: smallest r with r^3 >= n^2
  int T = 0;              // 0: ceil(iter_c * n * ln(1/eps) / r)
  double iter_c = 4.0;
  double degree_c = 2.0;  // regression degree ceil(degree_c * sqrt(r) * ln(T/eps))
  int degree_cap = 0;     // 0: none; otherwise clamps the regression degree
  int active_cap = 20;    // max coordinates the query-side regression may carry
  int64_t feature_cap = kDefaultFeatureCap;
  uint64_t seed = 0;
  bool force_correct_guesses = false;
  CoordSet planted;  // required by the forced-correct hook
};

int alg2_default_T(int n, int r, double eps, double iter_c);
int alg2_default_degree(int r, int T, double eps, double degree_c);

enum class Alg2Branch { HeavyGuess, LightRegression };

struct Alg2Iteration {
  Alg2Branch branch = Alg2Branch::LightRegression;
  int guessed = -1;           // heavy branch: coordinate bet on
  std::vector<int> dropped;   // light branch: coordinates pruned this pass
  double p_u_hat = -1.0;      // light branch: estimated remaining mass
  double block_mass_hat = -1.0;  // light branch: estimated block mass
  double residual_hat = -1.0;    // estimated mass left after the carve
  bool finished = false;         // exit check fired this iteration
  std::string remaining;         // coordinate set after the iteration
};

struct Alg2Trace {
  std::vector<Alg2Iteration> iterations;
  int default_label = -1;  // set when a decision list was emitted
};

struct Alg2RunResult {
  std::optional<Hypothesis> hypothesis;  // DecisionList when present
  Alg2Trace trace;
};

// Memoized per-state work so repeated trials over the same oracle stay
// cheap: entries replay their recorded query budget on a hit, keeping the
// accounting identical to a fresh run.  Only the exact backend answers
// independently of the per-trial oracle seed, so runs on any other
// backend bypass the cache.
struct Alg2LightStep {
  std::vector<int> dropped;
  std::string coords_after;
  double p_u_hat = -1.0;
  double block_mass_hat = -1.0;
  bool regressed = false;
  Hypothesis partial;
  QueryBudget spent;
};

struct Alg2Cache {
  std::unordered_map<std::string, Alg2LightStep> light_steps;  // state key
  std::unordered_map<std::string, std::pair<double, QueryBudget>> masses;
  std::unordered_map<std::string, std::pair<int, QueryBudget>> defaults;
};

Alg2RunResult alg2_single_run(SqOracle& oracle, const Alg2Config& cfg,
                              Alg2Cache* cache = nullptr);

struct Alg2LearnerResult {
  std::optional<Hypothesis> hypothesis;
  double est_error = 2.0;  // queried error of the winner
  int winning_trial = -1;
  int trials = 0;
  int produced = 0;  // runs that emitted a decision list
  std::vector<Alg2Trace> traces;
};

// Best-of-N wrapper: independent trials at error eps/3, one error query per
// candidate, argmin wins.  Throws when no trial produces a hypothesis.
Alg2LearnerResult alg2_learner(SqOracle& oracle, const Alg2Config& cfg, int trials);

// Query-side L1 regression on the distribution conditioned on `region`,
// restricted to monomials over I.  Reconstructs the conditional law of the
// active coordinates from moment queries (inclusion-exclusion over
// supersets), fits the weighted L1 polynomial on the reconstruction, and
// picks the rounding threshold by one query per grid point.
struct SqL1Result {
  Hypothesis h;
  double loss = 0.0;           // L1 loss of the fit on the reconstruction
  double threshold = 0.0;
  double est_error = 2.0;      // queried conditional error of the winner
  std::vector<int> active;     // coordinates carried by the reconstruction
  int64_t patterns = 0;        // reconstructed support size
  int degree_used = 0;
  double min_tolerance = 1.0;  // smallest tolerance used by any query here
};

struct SqL1Options {
  int degree = 1;
  double eps_prime = 0.01;   // target excess over the conditional optimum
  double mass_floor = 0.01;  // caller-certified lower bound on region mass
  int active_cap = 20;
  int64_t feature_cap = kDefaultFeatureCap;
};

SqL1Result sq_l1_regression(SqOracle& oracle, const Region& region, const CoordSet& I,
                            const SqL1Options& opt);

}  // namespace adl
