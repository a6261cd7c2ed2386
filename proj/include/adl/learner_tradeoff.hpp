#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adl/boosting.hpp"
#include "adl/hypothesis.hpp"
#include "adl/l1regression.hpp"
#include "adl/sqoracle.hpp"

namespace adl {

// Query-side weak learner trading approximation factor against budget: for a
// factor alpha it peels heavy coordinates or fits a low-degree polynomial on
// the light band, and returns the first partial classifier whose signed
// agreement clears r/(4n).  Strict mode enforces alpha in [64, sqrt(n)],
// which needs n >= 4096; relaxed mode lowers the floor to 4 and waives the
// cap so desk-scale runs are possible, at the cost of the worked constants.
struct Alg3Config {
  double alpha = 64.0;
  bool relaxed_constants = false;
  double reg_eps = 0.0;  // additive accuracy of the block regression; 0: 1/(8 alpha)
  int r = 0;             // 0: smallest r with alpha r^3 >= n^2
  int T = 0;             // 0: ceil(c n / (alpha r))
  int degree = 0;        // 0: ceil(c sqrt(r / alpha))
  double c = 4.0;
  int active_cap = 20;
  int64_t feature_cap = kDefaultFeatureCap;
  uint64_t seed = 0;
  bool force_correct_guesses = false;
  CoordSet planted;  // required when force_correct_guesses is set
};

int alg3_default_r(int n, double alpha);
int alg3_default_T(int n, int r, double alpha, double c);
int alg3_default_degree(int r, double alpha, double c);

enum class Alg3Branch { HeavyGuess, LightRegression };

struct Alg3Iteration {
  Alg3Branch branch = Alg3Branch::LightRegression;
  int guessed = -1;             // heavy branch: peeled coordinate
  std::vector<int> dropped;     // light branch: coordinates removed by the ratio test
  double p_u_hat = -1.0;        // light branch: remaining-mass estimate
  double block_mass_hat = -1.0; // light branch: carved-block mass estimate
  bool regressed = false;       // light branch: block was above the mass floor
  double agreement_hat = 0.0;   // signed agreement of the partial on the block
  bool fired = false;
  std::string remaining;        // coordinate set after the iteration
};

struct Alg3Trace {
  std::vector<Alg3Iteration> iterations;
  int chosen_default = -1;  // constant used off the block when the run fired
};

struct Alg3RunResult {
  std::optional<Hypothesis> hypothesis;
  Alg3Trace trace;
};

// One pass of the loop: per iteration either guess a heavy coordinate and
// carve {x_i = 1} with the constant-1 partial, or drop coordinates whose
// conditional one-mass crosses 1.01 r/n, carve the weight-at-most-2r band and
// regress on it.  After the carve, the signed agreement of the partial is
// queried at tolerance r/(100n); at r/(4n) or above the run returns the
// partial extended by the better constant elsewhere.  No value after T
// iterations means every check stayed below the bar.
Alg3RunResult alg3_single_run(SqOracle& oracle, const Alg3Config& cfg);

struct Alg3WeakResult {
  std::optional<Hypothesis> hypothesis;
  double est_error = 2.0;  // validating estimate of the winner
  int winning_trial = -1;
  int trials = 0;
  int produced = 0;   // runs that fired
  int qualified = 0;  // candidates whose estimate cleared the margin bar
  std::vector<Alg3Trace> traces;
};

// Best-of-N wrapper: each candidate gets one validating error query at
// tolerance margin/4 and qualifies when the estimate certifies true error at
// most 1/2 - margin.  margin 0 resolves to r/(16 n).  Throws when no trial
// qualifies.
Alg3WeakResult alg3_weak_learner(SqOracle& oracle, const Alg3Config& cfg, int trials,
                                 double margin = 0.0);

struct TradeoffConfig {
  double alpha = 4.0;  // target multiplicative factor; the weak runs use 2 alpha
  double eps = 0.1;
  bool relaxed_constants = false;
  double c = 4.0;
  int weak_trials = 8;  // per weak-learner invocation inside boosting
  int active_cap = 20;
  int64_t feature_cap = kDefaultFeatureCap;
  uint64_t seed = 0;
  bool force_correct_guesses = false;
  CoordSet planted;
  BoostConfig boost;
};

struct TradeoffBranch {
  double eps_used = 0.0;
  bool completed = false;
  std::string failure;     // boosting error message when the branch threw
  double est_error = 2.0;  // validating estimate of the branch hypothesis
  BoostDiResult boost;
};

struct TradeoffResult {
  Hypothesis hypothesis;
  double est_error = 2.0;
  int chosen_branch = -1;
  std::vector<TradeoffBranch> branches;
};

// Multiplicative agnostic learner: boosts the weak runs (at factor 2 alpha)
// through the distribution-independent engine with weak advantage
// 1/2 - 1/(2 alpha), once at eps and once at eps/4, and keeps the eps run
// unless the eps/4 run validates strictly better than the comparison slack.
// Final error is at most alpha * OPT + eps.  Throws when both branches fail.
TradeoffResult tradeoff_learner(SqOracle& oracle, const TradeoffConfig& cfg);

}  // namespace adl
