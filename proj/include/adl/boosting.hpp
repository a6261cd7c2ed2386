#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adl/dataset.hpp"
#include "adl/hypothesis.hpp"

namespace adl {

// Callable weak learner plus its declared (alpha, gamma) contract: whenever
// the class optimum on the view is at most 1/2 - alpha, the call should
// return, at least with constant probability, a hypothesis with view error
// at most 1/2 - gamma.  The engine verifies the returned error itself and
// treats violations the same as an explicit failure.
struct WeakLearnerHandle {
  std::function<std::optional<Hypothesis>(const ExplicitDistribution& view, uint64_t seed)> run;
  double alpha = 0.0;
  double gamma = 0.0;
  std::string name = "weak";
};

struct BoostConfig {
  int64_t rounds = 0;   // 0: ceil(4 / gamma^2)
  double floor = 0.0;   // 0: alpha / 4 (additive) or (guess + eps) / 4 (multiplicative)
  uint64_t seed = 0;
  int retries = 10;     // consecutive weak-learner attempts per round
};

enum class BoostStop { MeasureFloor, RoundsCap, WeakStall };

struct BoostRound {
  double view_error = 0.0;     // verified error of the accepted h on the round's view
  double margin = 0.0;         // 1/2 - view_error
  double step = 0.0;           // demotion factor applied to correctly labeled examples
  double measure_total = 0.0;  // total measure after the demotion
  double base_error = 0.0;     // error of the round's h on the input data
  int attempts = 0;
};

struct BoostResult {
  Hypothesis hypothesis;           // always a WeightedMajority
  double train_error = 1.0;        // error of `hypothesis` on the input data
  BoostStop stop = BoostStop::RoundsCap;
  int64_t rounds_run = 0;
  int64_t rounds_cap = 0;
  double floor_used = 0.0;
  int weak_calls = 0;              // attempts included
  double best_single_error = 1.0;  // min over rounds of base_error
  double max_density_ratio = 0.0;  // view probability over base probability, maximized
  bool measure_monotone = true;
  std::string chosen;              // "prefix <k>" or "single <t>"
  std::vector<BoostRound> rounds;
};

// Smooth-boosting loop: keeps a measure over the examples, demotes the ones
// the accepted round classified correctly (never promotes, so the measure
// only shrinks and stays below the base probabilities), renormalizes into
// the next view, and finally returns the best prefix majority or single
// round judged on the input data.  With a weak learner meeting its contract
// the result lands within alpha of the class optimum.  Throws
// std::runtime_error if the weak learner fails `retries` consecutive
// attempts before any round was accepted.
BoostResult aboost(const WeakLearnerHandle& weak, const ExplicitDistribution& data,
                   double alpha, double gamma, const BoostConfig& cfg = {});
BoostResult aboost(const WeakLearnerHandle& weak, const EmpiricalSample& data,
                   double alpha, double gamma, const BoostConfig& cfg = {});

// Rounds budget for one delta guess: ceil(ln(1/delta) / (gamma^2 delta)),
// at least 1.
int64_t aboost_di_budget(double gamma, double delta);

struct BoostDiGuess {
  double delta_guess = 0.0;
  int64_t rounds_budget = 0;
  int weak_calls = 0;
  double train_error = 1.0;
  bool accepted = false;
};

struct BoostDiResult {
  Hypothesis hypothesis;
  double train_error = 1.0;
  double final_guess = 0.0;
  int total_weak_calls = 0;
  std::vector<BoostDiGuess> guesses;
  BoostResult winning;  // engine result of the accepted guess
};

// Multiplicative-error wrapper: the residual-error scale delta is unknown,
// so guesses double from eps upward (capped at 1, where acceptance is
// vacuous), each guess runs the engine with the matching rounds budget and
// measure floor, and the first guess whose training error stays within
// guess + eps wins.  With a weak learner meeting its (alpha, gamma)
// contract the final error is at most OPT / (1 - 2 alpha) + eps.
BoostDiResult aboost_di(const WeakLearnerHandle& weak, const ExplicitDistribution& data,
                        double alpha, double gamma, double eps, const BoostConfig& cfg = {});
BoostDiResult aboost_di(const WeakLearnerHandle& weak, const EmpiricalSample& data,
                        double alpha, double gamma, double eps, const BoostConfig& cfg = {});

}  // namespace adl
