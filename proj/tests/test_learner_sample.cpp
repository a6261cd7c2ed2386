#include "adl/learner_sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "adl/bruteforce.hpp"
#include "adl/generators.hpp"
#include "adl/rng.hpp"
#include "doctest.h"

using namespace adl;

namespace {

// Three-point-support instance on n = 30 where both iteration-0 candidates
// err at exactly 1/2, forcing a guess.  x_p is the only positive pattern
// (coordinate 0 plus eleven decoys), x_q is a weight-20 negative pattern
// disjoint from the target {0}, and the all-zero point carries coin labels.
const char* kXp = "100000000000000000011111111111";
const char* kXq = "000000000011111111111111111111";

EmpiricalSample elimination_sample() {
  const std::string x0(30, '0');
  std::vector<LabeledExample> ex;
  for (int i = 0; i < 3; ++i) ex.push_back({BitVector::from_string(kXp), 1});
  for (int i = 0; i < 3; ++i) ex.push_back({BitVector::from_string(kXq), 0});
  ex.push_back({BitVector::from_string(x0), 0});
  ex.push_back({BitVector::from_string(x0), 0});
  ex.push_back({BitVector::from_string(x0), 1});
  ex.push_back({BitVector::from_string(x0), 1});
  return EmpiricalSample(30, ex);
}

ExplicitDistribution elimination_distribution() {
  const std::string x0(30, '0');
  std::vector<WeightedExample> pts;
  pts.push_back({BitVector::from_string(kXp), 1, 0.3});
  pts.push_back({BitVector::from_string(kXq), 0, 0.3});
  pts.push_back({BitVector::from_string(x0), 0, 0.2});
  pts.push_back({BitVector::from_string(x0), 1, 0.2});
  return ExplicitDistribution(30, pts);
}

bool string_superset(const std::string& big, const std::string& small) {
  REQUIRE(big.size() == small.size());
  for (size_t i = 0; i < big.size(); ++i)
    if (small[i] == '1' && big[i] != '1') return false;
  return true;
}

// Draws `count` distinct points whose weights come from the callback.
template <typename WeightFn>
std::vector<BitVector> distinct_points(Rng& gen, int n, int count, WeightFn next_weight) {
  std::vector<BitVector> pts;
  std::unordered_set<uint64_t> seen;
  int attempts = 0;
  while (static_cast<int>(pts.size()) < count && attempts++ < 64 * count) {
    const int w = std::min(next_weight(), n);
    BitVector x(n);
    while (x.count() < w) x.set(static_cast<int>(gen.below(n)), true);
    if (seen.insert(x.hash()).second) pts.push_back(std::move(x));
  }
  REQUIRE(static_cast<int>(pts.size()) == count);
  return pts;
}

}  // namespace

TEST_CASE("default radius and iteration count follow the cube-root rule") {
  CHECK(alg1_default_r(1) == 1);
  CHECK(alg1_default_r(8) == 4);
  CHECK(alg1_default_r(10) == 5);
  CHECK(alg1_default_r(12) == 6);
  CHECK(alg1_default_r(27) == 9);
  CHECK(alg1_default_r(30) == 10);
  CHECK(alg1_default_r(1000) == 100);
  CHECK(alg1_default_T(30, 10) == 4);
  CHECK(alg1_default_T(6, 4) == 3);
  CHECK(alg1_default_T(1, 1) == 2);

  std::vector<LabeledExample> one{{BitVector::from_string("10"), 1}};
  EmpiricalSample P(2, one);
  Alg1Config bad;
  bad.eps = 0.6;
  CHECK_THROWS_AS(alg1_single_run(P, bad), std::invalid_argument);
  Alg1Config hook;
  hook.force_correct_guesses = true;  // planted support left empty
  CHECK_THROWS_AS(alg1_single_run(P, hook), std::invalid_argument);

  ExplicitDistribution D(2, {{BitVector::from_string("10"), 1, 1.0}});
  Alg1Config norep;
  norep.repetitions = 0;
  CHECK_THROWS_AS(alg1_weak_learner(D, norep), std::invalid_argument);
  CHECK_THROWS_AS(strong_learner_sample(D, 0.5), std::invalid_argument);
}

TEST_CASE("all-ones labels accept immediately on both candidate shapes") {
  // Heavy-only sample: the light side is empty, so the regression candidate
  // is skipped and the constant-1 heavy candidate wins with zero error.
  std::vector<LabeledExample> heavy_only;
  for (int i = 0; i < 4; ++i) heavy_only.push_back({BitVector::from_string("11111000"), 1});
  for (int i = 0; i < 4; ++i) heavy_only.push_back({BitVector::from_string("11111100"), 1});
  EmpiricalSample P(8, heavy_only);
  Alg1Config cfg;
  cfg.eps = 0.1;
  Alg1RunResult run = alg1_single_run(P, cfg);
  REQUIRE(run.hypothesis.has_value());
  CHECK(run.trace.outcome == Alg1Outcome::Accepted);
  REQUIRE(run.trace.iterations.size() == 1);
  const auto& it = run.trace.iterations[0];
  CHECK(it.light_count == 0);
  CHECK(it.heavy_count == 8);
  CHECK(it.err1 == 2.0);  // regression candidate unavailable without light data
  CHECK(it.err2 == 0.0);
  CHECK(it.accepted_candidate == 2);
  CHECK(run.accepted_error == 0.0);
  CHECK(run.hypothesis->kind() == Hypothesis::Kind::RegionSplit);

  // A light point joins: now the regression candidate exists, fits the
  // constant-1 labels, and takes precedence.
  std::vector<LabeledExample> mixed = heavy_only;
  mixed.push_back({BitVector::from_string("10000000"), 1});
  EmpiricalSample Q(8, mixed);
  Alg1RunResult run2 = alg1_single_run(Q, cfg);
  REQUIRE(run2.hypothesis.has_value());
  const auto& it2 = run2.trace.iterations[0];
  CHECK(it2.err1 == 0.0);
  CHECK(it2.accepted_candidate == 1);
  CHECK(run2.accepted_error == 0.0);
}

TEST_CASE("a realizable light-band instance is solved by the regression candidate") {
  const int n = 12;
  MonotoneDisjunction f{BitVector::from_indices(n, {0, 5})};
  ExplicitDistribution inst = gen_planted(n, f, MarginalSpec::weight_band(0, 2), 0.0, 41);
  EmpiricalSample P = draw(inst, 2000, 7);

  Alg1Config cfg;
  cfg.eps = 0.1;
  Alg1RunResult run = alg1_single_run(P, cfg);
  REQUIRE(run.hypothesis.has_value());
  REQUIRE(run.trace.iterations.size() == 1);
  const auto& it = run.trace.iterations[0];
  CHECK(it.heavy_count == 0);
  CHECK(it.accepted_candidate == 1);
  CHECK(run.accepted_error <= 0.02);
  // Acceptance is sound against an independent error evaluation.
  const double recheck = hypothesis_error(*run.hypothesis, P);
  CHECK(std::abs(recheck - run.accepted_error) <= 1e-12);
  CHECK(recheck <= 0.5 - cfg.eps / 10.0 + 1e-12);
  CHECK(run.hypothesis->kind() == Hypothesis::Kind::RegionSplit);
  CHECK(hypothesis_error(*run.hypothesis, inst) <= 0.05);
}

TEST_CASE("the elimination instance guesses a negative heavy point then accepts") {
  EmpiricalSample P = elimination_sample();
  for (uint64_t seed : {0ull, 11ull, 137ull}) {
    Alg1Config cfg;
    cfg.eps = 0.1;
    cfg.seed = seed;
    cfg.force_correct_guesses = true;
    cfg.planted = BitVector::from_indices(30, {0});
    Alg1RunResult run = alg1_single_run(P, cfg);

    REQUIRE(run.trace.iterations.size() == 2);
    const auto& it0 = run.trace.iterations[0];
    CHECK(it0.remaining == std::string(30, '1'));
    CHECK(it0.light_count == 4);
    CHECK(it0.heavy_count == 6);
    CHECK(it0.err1 == 0.5);
    CHECK(it0.err2 == 0.5);
    CHECK_FALSE(it0.accepted);
    // The hook only allows guesses disjoint from the target, so x_q is forced.
    CHECK(it0.guess == std::string(kXq));
    CHECK(it0.removed == 20);

    const auto& it1 = run.trace.iterations[1];
    CHECK(it1.remaining == std::string(10, '1') + std::string(20, '0'));
    CHECK(it1.light_count == 10);
    CHECK(it1.heavy_count == 0);
    CHECK(it1.err1 == 0.2);
    CHECK(it1.accepted);
    CHECK(it1.accepted_candidate == 1);

    CHECK(run.trace.outcome == Alg1Outcome::Accepted);
    REQUIRE(run.hypothesis.has_value());
    CHECK(run.accepted_error == 0.2);
    CHECK(hypothesis_error(*run.hypothesis, P) == 0.2);
    CHECK(run.hypothesis->kind() == Hypothesis::Kind::RegionSplit);
    // The target coordinate survives the elimination.
    CHECK(it1.remaining[0] == '1');
  }
}

TEST_CASE("wrong guesses still shrink the active set and the run recovers") {
  EmpiricalSample P = elimination_sample();
  Alg1Cache cache;  // two distinct post-guess states, so 50 seeds share two fits
  bool saw_xp = false, saw_xq = false;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Alg1Config cfg;
    cfg.eps = 0.1;
    cfg.seed = seed;
    Alg1RunResult run = alg1_single_run(P, cfg, &cache);
    REQUIRE(run.trace.iterations.size() == 2);
    const auto& it0 = run.trace.iterations[0];
    const auto& it1 = run.trace.iterations[1];
    if (it0.guess == std::string(kXp)) {
      saw_xp = true;
      CHECK(it0.removed == 12);
      CHECK(it1.remaining[0] == '0');  // the wrong guess deletes the target coordinate
    } else {
      REQUIRE(it0.guess == std::string(kXq));
      saw_xq = true;
      CHECK(it0.removed == 20);
      CHECK(it1.remaining[0] == '1');
    }
    // Both guess paths still reach an accepting regression candidate at the
    // true optimum of this sample.
    CHECK(run.trace.outcome == Alg1Outcome::Accepted);
    CHECK(run.accepted_error == 0.2);
    CHECK(it1.heavy_count == 0);
  }
  CHECK(saw_xp);
  CHECK(saw_xq);
}

TEST_CASE("a shared candidate cache does not change any run") {
  EmpiricalSample P = elimination_sample();
  Alg1Cache cache;
  for (uint64_t seed = 0; seed < 6; ++seed) {
    Alg1Config cfg;
    cfg.eps = 0.1;
    cfg.seed = seed;
    Alg1RunResult fresh = alg1_single_run(P, cfg);
    Alg1RunResult cached = alg1_single_run(P, cfg, &cache);
    REQUIRE(fresh.trace.iterations.size() == cached.trace.iterations.size());
    for (size_t k = 0; k < fresh.trace.iterations.size(); ++k) {
      const auto& a = fresh.trace.iterations[k];
      const auto& b = cached.trace.iterations[k];
      CHECK(a.remaining == b.remaining);
      CHECK(a.err1 == b.err1);
      CHECK(a.err2 == b.err2);
      CHECK(a.guess == b.guess);
      CHECK(a.accepted == b.accepted);
      CHECK(a.accepted_candidate == b.accepted_candidate);
    }
    CHECK(fresh.accepted_error == cached.accepted_error);
    REQUIRE(fresh.hypothesis.has_value());
    REQUIRE(cached.hypothesis.has_value());
    CHECK(hypothesis_error(*fresh.hypothesis, P) == hypothesis_error(*cached.hypothesis, P));
  }
  // The cache held both iteration-0 and the two possible iteration-1 keys.
  CHECK(cache.by_remaining.size() >= 2);
}

TEST_CASE("uniform side labels are a coin flip instead of the empirical minimizer") {
  // Three light points, all labeled 0, with the feature cap too small for the
  // regression candidate: only the constant side label can fit them.
  std::vector<LabeledExample> ex;
  ex.push_back({BitVector::from_indices(12, {0}), 0});
  ex.push_back({BitVector::from_indices(12, {1}), 0});
  ex.push_back({BitVector::from_indices(12, {2}), 0});
  EmpiricalSample P(12, ex);

  Alg1Config cfg;
  cfg.eps = 0.1;
  cfg.feature_cap = 2;

  // Minimizing variant: deterministic accept with the majority label 0.
  Alg1RunResult base = alg1_single_run(P, cfg);
  REQUIRE(base.hypothesis.has_value());
  CHECK(base.trace.iterations[0].err1 == 2.0);
  CHECK(base.trace.iterations[0].accepted_candidate == 2);
  CHECK(base.accepted_error == 0.0);

  // Coin-flip variant: some seeds draw side label 1, err at 1, and die with
  // an empty heavy part.
  bool saw_accept = false, saw_reject = false;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Alg1Config u = cfg;
    u.uniform_cprime = true;
    u.seed = seed;
    Alg1RunResult run = alg1_single_run(P, u);
    if (run.hypothesis) {
      saw_accept = true;
      CHECK(run.accepted_error == 0.0);
    } else {
      saw_reject = true;
      CHECK(run.trace.outcome == Alg1Outcome::HeavyEmpty);
      CHECK(run.trace.iterations[0].err2 == 1.0);
    }
  }
  CHECK(saw_accept);
  CHECK(saw_reject);
}

TEST_CASE("invariants hold across random planted instances") {
  Rng meta(2026);
  const int kWeights[] = {0, 1, 2, 3, 4, 7, 8, 9, 10};
  for (int inst = 0; inst < 8; ++inst) {
    const int n = 8 + static_cast<int>(meta.below(3));  // 8..10
    std::vector<BitVector> pts =
        distinct_points(meta, n, 20, [&] { return kWeights[meta.below(9)]; });
    BitVector S(n);
    S.set(static_cast<int>(meta.below(n)), true);
    S.set(static_cast<int>(meta.below(n)), true);
    const double eta = (inst % 3 == 0) ? 0.0 : (inst % 3 == 1 ? 0.2 : 0.45);
    ExplicitDistribution gp = gen_planted(n, MonotoneDisjunction{S}, MarginalSpec::support_list(pts),
                                     eta, 900 + inst);
    EmpiricalSample P = draw(gp, 400, 77 + inst);

    for (uint64_t seed = 0; seed < 3; ++seed) {
      Alg1Config cfg;
      cfg.eps = (inst % 2 == 0) ? 0.1 : 0.3;
      cfg.seed = seed;
      Alg1RunResult run = alg1_single_run(P, cfg);

      const int r = alg1_default_r(n);
      const int T = alg1_default_T(n, r);
      REQUIRE(run.trace.iterations.size() >= 1);
      CHECK(run.trace.iterations.size() <= static_cast<size_t>(T));

      for (size_t k = 0; k < run.trace.iterations.size(); ++k) {
        const auto& it = run.trace.iterations[k];
        CHECK(it.light_count + it.heavy_count == 400);
        if (!it.guess.empty()) {
          CHECK(it.removed > r);  // only heavy points are guessed
          REQUIRE(k + 1 < run.trace.iterations.size());
          const CoordSet I = CoordSet::from_string(it.remaining);
          const BitVector g = BitVector::from_string(it.guess);
          CHECK(I.and_not(g).to_string() == run.trace.iterations[k + 1].remaining);
          CHECK(string_superset(it.remaining, run.trace.iterations[k + 1].remaining));
        }
      }

      const bool accepted = run.trace.outcome == Alg1Outcome::Accepted;
      CHECK(run.hypothesis.has_value() == accepted);
      if (accepted) {
        CHECK(run.hypothesis->kind() == Hypothesis::Kind::RegionSplit);
        const double recheck = hypothesis_error(*run.hypothesis, P);
        CHECK(std::abs(recheck - run.accepted_error) <= 1e-12);
        CHECK(recheck <= 0.5 - cfg.eps / 10.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("the correct-guess hook never deletes a target coordinate") {
  const int n = 12;  // r = 6, so heavy means weight 7 or more
  BitVector S = BitVector::from_indices(n, {0, 3});
  // Every point appears with both labels equally often, so each candidate has
  // sample error exactly 1/2 and no run can accept: guessing is guaranteed.
  std::vector<BitVector> base = {
      BitVector::from_indices(n, {1, 2, 4, 5, 6, 7, 8, 9}),
      BitVector::from_indices(n, {2, 4, 5, 6, 7, 8, 9, 10}),
      BitVector::from_indices(n, {0, 1, 2, 4, 5, 6, 7}),  // hits S: never a guess
      BitVector::from_indices(n, {1}),
      BitVector::from_indices(n, {4, 10}),
  };
  std::vector<LabeledExample> pts;
  for (const auto& x : base) {
    pts.push_back({x, 0});
    pts.push_back({x, 1});
  }
  EmpiricalSample P(n, pts);

  int guesses_seen = 0;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Alg1Config cfg;
    cfg.eps = 0.05;
    cfg.seed = seed;
    cfg.force_correct_guesses = true;
    cfg.planted = S;
    Alg1RunResult run = alg1_single_run(P, cfg);
    CHECK(run.trace.outcome != Alg1Outcome::Accepted);
    for (const auto& it : run.trace.iterations) {
      CHECK(string_superset(it.remaining, S.to_string()));
      if (!it.guess.empty()) {
        ++guesses_seen;
        CHECK_FALSE(BitVector::from_string(it.guess).any_and(S));
      }
    }
  }
  CHECK(guesses_seen > 0);
}

TEST_CASE("the repetition wrapper solves a realizable wide instance") {
  const int n = 30;
  MonotoneDisjunction f{BitVector::from_indices(n, {0, 1})};
  ExplicitDistribution inst = gen_planted(n, f, MarginalSpec::weight_band(0, 2), 0.0, 23);

  Alg1Config cfg;
  cfg.eps = 0.2;
  cfg.sample_size = 20000;
  cfg.repetitions = 10;
  cfg.seed = 99;
  WeakSampleReport rep = alg1_weak_learner(inst, cfg);
  CHECK(rep.sample_size == 20000);
  CHECK(rep.trials == 10);
  CHECK(rep.runs_accepted == 10);  // every trial hits the same cached accept
  CHECK(rep.runs_validated == 10);
  REQUIRE(rep.hypothesis.has_value());
  CHECK(rep.winning_trial == 0);
  CHECK(rep.held_out_error <= 0.05);
  CHECK(hypothesis_error(*rep.hypothesis, inst) <= 0.05);
}

TEST_CASE("the repetition wrapper passes through elimination to a good hypothesis") {
  ExplicitDistribution D = elimination_distribution();
  Alg1Config cfg;
  cfg.eps = 0.2;
  cfg.sample_size = 4000;
  cfg.repetitions = 60;
  cfg.seed = 4;
  WeakSampleReport rep = alg1_weak_learner(D, cfg);
  REQUIRE(rep.hypothesis.has_value());
  CHECK(rep.held_out_error <= 0.25);
  CHECK(rep.runs_validated >= 30);
  // Every successful run had to survive at least one elimination step.
  bool eliminated = false;
  for (const auto& tr : rep.traces)
    for (const auto& it : tr.iterations)
      if (it.removed > 0) eliminated = true;
  CHECK(eliminated);
  CHECK(hypothesis_error(*rep.hypothesis, D) <= 0.22);
}

TEST_CASE("the repetition wrapper reports failure on coin labels") {
  // Labels independent of x: every hypothesis errs at exactly 1/2, so no run
  // can validate below the acceptance bar.
  Rng gen(31);
  std::vector<BitVector> base =
      distinct_points(gen, 6, 10, [&] { return static_cast<int>(gen.below(7)); });
  std::vector<WeightedExample> pts;
  for (const auto& x : base) {
    pts.push_back({x, 0, 0.05});
    pts.push_back({x, 1, 0.05});
  }
  ExplicitDistribution D(6, pts);

  Alg1Config cfg;
  cfg.eps = 0.4;
  cfg.sample_size = 3000;
  cfg.repetitions = 40;
  cfg.seed = 12;
  WeakSampleReport rep = alg1_weak_learner(D, cfg);
  CHECK_FALSE(rep.hypothesis.has_value());
  CHECK(rep.runs_validated == 0);
  CHECK(rep.winning_trial == -1);
  CHECK(rep.traces.size() == 40);
}

TEST_CASE("boosted learner drives a realizable instance to near-zero error") {
  const int n = 12;
  MonotoneDisjunction f{BitVector::from_indices(n, {2, 7})};
  ExplicitDistribution inst = gen_planted(n, f, MarginalSpec::weight_band(0, 2), 0.0, 8);

  Alg1Config weak;
  weak.sample_size = 1500;
  weak.repetitions = 15;
  weak.seed = 301;
  BoostConfig bc;
  bc.seed = 302;
  bc.retries = 4;
  StrongSampleResult res = strong_learner_sample(inst, 0.3, weak, bc);
  CHECK(res.error <= 0.05);
  CHECK(res.boost.rounds_run >= 1);
  const double exact = exhaustive_hypothesis_error(res.hypothesis, inst);
  CHECK(std::abs(exact - res.error) <= 1e-12);
}

TEST_CASE("boosted learner lands within eps of the enumerated optimum under noise") {
  const int n = 10;
  // Small hand-shaped support: twenty light points and ten heavy ones keeps
  // every inner regression tiny while both branches stay reachable.
  Rng gen(77);
  std::vector<BitVector> pts =
      distinct_points(gen, n, 20, [&] { return static_cast<int>(gen.below(3)); });
  std::vector<BitVector> heavy =
      distinct_points(gen, n, 10, [&] { return 6 + static_cast<int>(gen.below(4)); });
  pts.insert(pts.end(), heavy.begin(), heavy.end());
  BitVector S = BitVector::from_indices(n, {1, 4});
  ExplicitDistribution inst =
      gen_planted(n, MonotoneDisjunction{S}, MarginalSpec::support_list(pts), 0.1, 13);

  const double eps = 0.15;
  OptResult opt = opt_enumerate(inst, ConceptClass::Monotone);
  REQUIRE(opt.opt <= 0.5 - eps);  // weak-learner precondition holds

  Alg1Config weak;
  weak.sample_size = 1500;
  weak.repetitions = 25;
  weak.seed = 404;
  BoostConfig bc;
  bc.seed = 405;
  bc.retries = 3;
  bc.rounds = 40;
  bc.floor = 0.12;
  StrongSampleResult res = strong_learner_sample(inst, eps, weak, bc);
  const double exact = exhaustive_hypothesis_error(res.hypothesis, inst);
  CHECK(exact <= opt.opt + eps + 1e-9);
  CHECK(res.boost.weak_calls >= 1);
}

TEST_CASE("monotonization lifts the boosted learner to general disjunctions") {
  const int n = 5;
  GeneralDisjunction g{BitVector::from_indices(n, {0}), BitVector::from_indices(n, {2})};
  Rng label(55);
  std::vector<WeightedExample> pts;
  for (uint64_t mask = 0; mask < 32; ++mask) {
    BitVector x(n);
    for (int i = 0; i < n; ++i) x.set(i, (mask >> i) & 1);
    int y = g.eval(x);
    if (label.uniform01() < 0.05) y = 1 - y;
    pts.push_back({x, y, 1.0 / 32.0});
  }
  ExplicitDistribution D(n, pts);
  ExplicitDistribution M = monotonize_instance(D);
  CHECK(M.dimension() == 2 * n);

  const double eps = 0.3;
  OptResult opt = opt_enumerate(M, ConceptClass::Monotone);
  Alg1Config weak;
  weak.sample_size = 1200;
  weak.repetitions = 15;
  weak.seed = 606;
  BoostConfig bc;
  bc.seed = 607;
  bc.retries = 4;
  StrongSampleResult res = strong_learner_sample(M, eps, weak, bc);
  const double exact = exhaustive_hypothesis_error(res.hypothesis, M);
  CHECK(exact <= opt.opt + eps + 1e-9);
}
