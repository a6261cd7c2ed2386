#include "adl/learner_sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adl/generators.hpp"
#include "adl/region.hpp"
#include "adl/rng.hpp"

namespace adl {

int alg1_default_r(int n) {
  if (n < 1) throw std::invalid_argument("alg1_default_r: dimension must be positive");
  const int64_t target = static_cast<int64_t>(n) * n;
  for (int r = 1;; ++r)
    if (static_cast<int64_t>(r) * r * r >= target) return r;
}

int alg1_default_T(int n, int r) {
  if (n < 1 || r < 1) throw std::invalid_argument("alg1_default_T: arguments must be positive");
  return (n + r - 1) / r + 1;
}

std::string to_string(Alg1Outcome o) {
  switch (o) {
    case Alg1Outcome::Accepted: return "accepted";
    case Alg1Outcome::OutOfIterations: return "out-of-iterations";
    case Alg1Outcome::HeavyEmpty: return "heavy-empty";
    case Alg1Outcome::NoEliminableGuess: return "no-eliminable-guess";
  }
  return "unknown";
}

namespace {

struct Resolved {
  double eps;
  int r;
  int T;
};

Resolved resolve(const Alg1Config& cfg, int n) {
  if (!(cfg.eps > 0.0 && cfg.eps < 0.5))
    throw std::invalid_argument("alg1: eps must lie in (0, 1/2)");
  const int r = cfg.r > 0 ? cfg.r : alg1_default_r(n);
  const int T = cfg.T > 0 ? cfg.T : alg1_default_T(n, r);
  if (cfg.r < 0 || cfg.T < 0) throw std::invalid_argument("alg1: r and T must be nonnegative");
  return {cfg.eps, r, T};
}

int majority_label(const std::vector<LabeledExample>& ex, const std::vector<size_t>& idx) {
  int64_t ones = 0;
  for (size_t i : idx) ones += ex[i].y;
  // Ties, and the empty side, land on 1.
  return 2 * ones >= static_cast<int64_t>(idx.size()) ? 1 : 0;
}

double full_sample_error(const Hypothesis& h, const std::vector<LabeledExample>& ex) {
  int64_t wrong = 0;
  for (const auto& e : ex) wrong += h.eval(e.x) != e.y;
  return static_cast<double>(wrong) / static_cast<double>(ex.size());
}

Alg1Candidates build_candidates(const EmpiricalSample& P, const CoordSet& I, int r, double eps,
                                int64_t feature_cap, const std::vector<size_t>& light,
                                int c1, int c2) {
  const auto& ex = P.examples();
  const Region light_region = Region::weight_at_most(I, r);
  Alg1Candidates out;

  if (!light.empty()) {
    std::vector<LabeledExample> subset;
    subset.reserve(light.size());
    for (size_t i : light) subset.push_back(ex[i]);
    EmpiricalSample light_sample(P.dimension(), std::move(subset));
    try {
      L1LearnerResult reg = l1_regress_learner(light_sample, I, eps, feature_cap);
      out.h1 = Hypothesis::region_split(light_region, reg.h, Hypothesis::constant(c1));
      out.err1 = full_sample_error(out.h1, ex);
      out.has_h1 = true;
    } catch (const std::invalid_argument& e) {
      // Too many light features for the cap: the candidate is skipped, the
      // run falls through to h2 and the guess step.
      if (std::string(e.what()).find("feature cap") == std::string::npos) throw;
    }
  }

  out.h2 = Hypothesis::region_split(light_region, Hypothesis::constant(c2), Hypothesis::constant(1));
  out.err2 = full_sample_error(out.h2, ex);
  return out;
}

}  // namespace

Alg1RunResult alg1_single_run(const EmpiricalSample& P, const Alg1Config& cfg, Alg1Cache* cache) {
  const int n = P.dimension();
  const Resolved rc = resolve(cfg, n);
  if (cfg.force_correct_guesses && cfg.planted.dimension() != n)
    throw std::invalid_argument("alg1: force_correct_guesses requires the planted support");

  Rng rng(cfg.seed);
  const auto& ex = P.examples();
  CoordSet I = CoordSet::all_ones(n);

  Alg1RunResult res;
  res.trace.outcome = Alg1Outcome::OutOfIterations;
  const double threshold = 0.5 - rc.eps / 10.0;

  for (int t = 0; t < rc.T; ++t) {
    Alg1Iteration it;
    it.remaining = I.to_string();

    std::vector<size_t> light, heavy;
    for (size_t i = 0; i < ex.size(); ++i)
      (ex[i].x.count_and(I) <= rc.r ? light : heavy).push_back(i);
    it.light_count = static_cast<int64_t>(light.size());
    it.heavy_count = static_cast<int64_t>(heavy.size());

    int c1 = 1, c2 = 1;
    if (cfg.uniform_cprime) {
      c1 = rng.coin() ? 1 : 0;
      c2 = rng.coin() ? 1 : 0;
    }

    Alg1Candidates cand;
    bool have = false;
    const bool cacheable = cache != nullptr && !cfg.uniform_cprime;
    if (cacheable) {
      auto found = cache->by_remaining.find(it.remaining);
      if (found != cache->by_remaining.end()) {
        cand = found->second;
        have = true;
      }
    }
    if (!have) {
      if (!cfg.uniform_cprime) {
        c1 = majority_label(ex, heavy);
        c2 = majority_label(ex, light);
      }
      cand = build_candidates(P, I, rc.r, rc.eps, cfg.feature_cap, light, c1, c2);
      if (cacheable) cache->by_remaining.emplace(it.remaining, cand);
    }
    it.err1 = cand.err1;
    it.err2 = cand.err2;

    if (cand.has_h1 && cand.err1 <= threshold) {
      it.accepted = true;
      it.accepted_candidate = 1;
      res.hypothesis = cand.h1;
      res.accepted_error = cand.err1;
    } else if (cand.err2 <= threshold) {
      it.accepted = true;
      it.accepted_candidate = 2;
      res.hypothesis = cand.h2;
      res.accepted_error = cand.err2;
    }
    if (it.accepted) {
      res.trace.iterations.push_back(std::move(it));
      res.trace.outcome = Alg1Outcome::Accepted;
      return res;
    }

    if (heavy.empty()) {
      res.trace.iterations.push_back(std::move(it));
      res.trace.outcome = Alg1Outcome::HeavyEmpty;
      return res;
    }
    std::vector<size_t> pool;
    if (cfg.force_correct_guesses) {
      for (size_t i : heavy)
        if (!ex[i].x.any_and(cfg.planted)) pool.push_back(i);
      if (pool.empty()) {
        res.trace.iterations.push_back(std::move(it));
        res.trace.outcome = Alg1Outcome::NoEliminableGuess;
        return res;
      }
    } else {
      pool = heavy;
    }

    const BitVector& guess = ex[pool[rng.below(pool.size())]].x;
    it.guess = guess.to_string();
    CoordSet next = I.and_not(guess);
    it.removed = I.count() - next.count();
    I = std::move(next);
    res.trace.iterations.push_back(std::move(it));
  }
  return res;
}

WeakSampleReport alg1_weak_learner(const ExplicitDistribution& source, const Alg1Config& cfg) {
  const int n = source.dimension();
  resolve(cfg, n);
  if (cfg.repetitions < 1)
    throw std::invalid_argument("alg1_weak_learner: repetitions must be at least 1");

  WeakSampleReport rep;
  rep.sample_size =
      cfg.sample_size > 0 ? cfg.sample_size : vc_sample_size(n, cfg.eps / 20.0);
  rep.trials = cfg.repetitions;

  const EmpiricalSample P = draw(source, rep.sample_size, Rng::derive(cfg.seed, 0xa11, 0));
  const EmpiricalSample V = draw(source, rep.sample_size, Rng::derive(cfg.seed, 0xa11, 1));

  Alg1Cache cache;
  std::unordered_map<std::string, double> validation_memo;
  const double bar = 0.5 - cfg.eps / 100.0;

  for (int trial = 0; trial < cfg.repetitions; ++trial) {
    Alg1Config run_cfg = cfg;
    run_cfg.seed = Rng::derive(cfg.seed, 0x57, static_cast<uint64_t>(trial));
    Alg1RunResult run = alg1_single_run(P, run_cfg, &cache);
    if (run.hypothesis) {
      ++rep.runs_accepted;
      double v_err = 2.0;
      const auto& last = run.trace.iterations.back();
      const std::string key = last.remaining + ":" + std::to_string(last.accepted_candidate);
      if (!cfg.uniform_cprime) {
        auto found = validation_memo.find(key);
        if (found != validation_memo.end()) {
          v_err = found->second;
        } else {
          v_err = hypothesis_error(*run.hypothesis, V);
          validation_memo.emplace(key, v_err);
        }
      } else {
        v_err = hypothesis_error(*run.hypothesis, V);
      }
      if (v_err <= bar) {
        ++rep.runs_validated;
        if (v_err < rep.held_out_error - 1e-15) {
          rep.hypothesis = run.hypothesis;
          rep.held_out_error = v_err;
          rep.winning_trial = trial;
        }
      }
    }
    rep.traces.push_back(std::move(run.trace));
  }
  return rep;
}

StrongSampleResult strong_learner_sample(const ExplicitDistribution& source, double eps,
                                         const Alg1Config& weak_cfg, const BoostConfig& boost_cfg) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("strong_learner_sample: eps must lie in (0, 1/2)");
  const double gamma = eps / 100.0;

  Alg1Config base = weak_cfg;
  base.eps = eps;

  WeakLearnerHandle weak;
  weak.alpha = eps;
  weak.gamma = gamma;
  weak.name = "weak-sample";
  weak.run = [base](const ExplicitDistribution& view, uint64_t seed) -> std::optional<Hypothesis> {
    Alg1Config c = base;
    c.seed = seed;
    return alg1_weak_learner(view, c).hypothesis;
  };

  BoostConfig bc = boost_cfg;
  if (bc.rounds <= 0) {
    const double formula = std::ceil(4.0 / (gamma * gamma));
    bc.rounds = static_cast<int64_t>(std::min(formula, 256.0));
  }

  StrongSampleResult out;
  out.boost = aboost(weak, source, eps, gamma, bc);
  out.hypothesis = out.boost.hypothesis;
  out.error = out.boost.train_error;
  return out;
}

}  // namespace adl
