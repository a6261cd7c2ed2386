#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "adl/boosting.hpp"
#include "adl/dataset.hpp"
#include "adl/hypothesis.hpp"
#include "adl/l1regression.hpp"

namespace adl {

// Sample-based weak learner: repeatedly split the sample by Hamming weight
// over the remaining coordinates, try an L1-regression hypothesis on the
// light part and a constant-1-on-heavy hypothesis, and when neither is
// accepted guess a heavy example and drop its one-coordinates from
// consideration.

struct Alg1Config {
  double eps = 0.1;
  int r = 0;                // 0: smallest r with r^3 >= n^2
  int T = 0;                // 0: ceil(n / r) + 1
  int64_t sample_size = 0;  // 0: vc_sample_size(n, eps / 20)
  int repetitions = 500;    // single runs attempted by the wrapper
  uint64_t seed = 0;

  // Sample each c' uniformly instead of minimizing the empirical error.
  bool uniform_cprime = false;

  // Debug hook: draw the guess only from heavy examples the planted
  // disjunction maps to 0, so eliminations never touch its support.
  bool force_correct_guesses = false;
  CoordSet planted;

  int64_t feature_cap = kDefaultFeatureCap;
};

int alg1_default_r(int n);          // smallest r >= 1 with r^3 >= n^2
int alg1_default_T(int n, int r);   // ceil(n / r) + 1

enum class Alg1Outcome { Accepted, OutOfIterations, HeavyEmpty, NoEliminableGuess };
std::string to_string(Alg1Outcome o);

struct Alg1Iteration {
  std::string remaining;       // I_t as a bitstring
  int64_t light_count = 0;     // examples with W_{I_t}(x) <= r
  int64_t heavy_count = 0;
  double err1 = 2.0;           // 2.0 marks a candidate that was unavailable
  double err2 = 2.0;
  bool accepted = false;
  int accepted_candidate = 0;  // 1 or 2 when accepted
  std::string guess;           // x_guess bitstring when a guess fired
  int removed = 0;             // |I_t| - |I_{t+1}|, equals W_{I_t}(x_guess)
};

struct Alg1Trace {
  std::vector<Alg1Iteration> iterations;
  Alg1Outcome outcome = Alg1Outcome::OutOfIterations;
};

struct Alg1RunResult {
  std::optional<Hypothesis> hypothesis;  // always a RegionSplit when present
  double accepted_error = 2.0;           // in-sample error of the accepted candidate
  Alg1Trace trace;
};

// Candidates depend only on the remaining-coordinate set once the sample is
// fixed and c' is minimized, so repeated runs share them through this cache.
// Runs with uniform_cprime bypass it.  Not safe for concurrent writers.
struct Alg1Candidates {
  bool has_h1 = false;
  Hypothesis h1;
  double err1 = 2.0;
  Hypothesis h2;
  double err2 = 2.0;
};

struct Alg1Cache {
  std::unordered_map<std::string, Alg1Candidates> by_remaining;
};

// One pass of the iteration loop on a fixed sample.  Accepts the first
// candidate whose full-sample error reaches 1/2 - eps/10, otherwise guesses
// uniformly from the heavy examples; the trace records every iteration.
Alg1RunResult alg1_single_run(const EmpiricalSample& P, const Alg1Config& cfg,
                              Alg1Cache* cache = nullptr);

struct WeakSampleReport {
  std::optional<Hypothesis> hypothesis;  // absent: no run passed validation
  double held_out_error = 2.0;
  int winning_trial = -1;
  int trials = 0;
  int runs_accepted = 0;   // single runs that returned a hypothesis
  int runs_validated = 0;  // accepted runs meeting the held-out threshold
  int64_t sample_size = 0;
  std::vector<Alg1Trace> traces;  // one per trial
};

// Draws one training sample and one held-out sample of the same size, runs
// alg1_single_run `repetitions` times on fresh seed streams, and returns
// the hypothesis with the lowest held-out error among those reaching
// 1/2 - eps/100 (ties break toward the earlier trial).
WeakSampleReport alg1_weak_learner(const ExplicitDistribution& source, const Alg1Config& cfg);

struct StrongSampleResult {
  Hypothesis hypothesis;
  double error = 1.0;  // on the source distribution
  BoostResult boost;
};

// Boosts the wrapper as an (eps, eps/100) weak learner into a hypothesis
// with error at most OPT + eps on the source.  boost_cfg.rounds defaults to
// the engine formula capped at 256; the measure floor usually stops the
// loop much earlier.
StrongSampleResult strong_learner_sample(const ExplicitDistribution& source, double eps,
                                         const Alg1Config& weak_cfg = {},
                                         const BoostConfig& boost_cfg = {});

}  // namespace adl
