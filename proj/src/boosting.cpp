#include "adl/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "adl/rng.hpp"

namespace adl {

namespace {

constexpr double kErrTol = 1e-12;

struct BasePoint {
  BitVector x;
  int y;
  double p;
};

std::vector<BasePoint> flatten(const ExplicitDistribution& d) {
  std::vector<BasePoint> out;
  out.reserve(d.support().size());
  for (const auto& e : d.support()) out.push_back({e.x, e.y, e.p});
  return out;
}

ExplicitDistribution collapse_sample(const EmpiricalSample& s) {
  std::unordered_map<uint64_t, std::vector<size_t>> buckets;
  std::vector<WeightedExample> merged;
  const double unit = 1.0 / static_cast<double>(s.size());
  for (const auto& e : s.examples()) {
    const uint64_t key = e.x.hash() * 2 + static_cast<uint64_t>(e.y);
    auto& bucket = buckets[key];
    bool found = false;
    for (size_t idx : bucket) {
      if (merged[idx].y == e.y && merged[idx].x == e.x) {
        merged[idx].p += unit;
        found = true;
        break;
      }
    }
    if (!found) {
      bucket.push_back(merged.size());
      merged.push_back({e.x, e.y, unit});
    }
  }
  return ExplicitDistribution(s.dimension(), std::move(merged));
}

void check_weak_params(double alpha, double gamma) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::invalid_argument("boosting: alpha must lie in (0, 1/2)");
  if (!(gamma > 0.0 && gamma < alpha))
    throw std::invalid_argument("boosting: gamma must lie in (0, alpha)");
}

// One-sided multiplicative-weights loop over explicit base points.
BoostResult run_rounds(const WeakLearnerHandle& weak, const std::vector<BasePoint>& base,
                       int n, double gamma, double floor_value, int64_t rounds_cap,
                       int retries, uint64_t seed) {
  if (retries < 1) throw std::invalid_argument("boosting: retries must be at least 1");
  if (rounds_cap < 1) throw std::invalid_argument("boosting: rounds cap must be at least 1");
  if (!weak.run) throw std::invalid_argument("boosting: weak learner callable is empty");

  const size_t m = base.size();
  std::vector<double> measure(m);
  for (size_t i = 0; i < m; ++i) measure[i] = base[i].p;

  BoostResult res;
  res.rounds_cap = rounds_cap;
  res.floor_used = floor_value;
  res.stop = BoostStop::RoundsCap;

  std::vector<Hypothesis> accepted;
  std::vector<std::vector<uint8_t>> preds;  // preds[t][i] = h_t(x_i)

  for (int64_t round = 0; round < rounds_cap; ++round) {
    double total = 0.0;
    for (double v : measure) total += v;
    if (total <= floor_value) {
      res.stop = BoostStop::MeasureFloor;
      break;
    }

    std::vector<WeightedExample> view_support;
    view_support.reserve(m);
    for (size_t i = 0; i < m; ++i)
      view_support.push_back({base[i].x, base[i].y, measure[i] / total});
    ExplicitDistribution view(n, std::move(view_support));
    for (size_t i = 0; i < m; ++i) {
      if (base[i].p <= 0.0) continue;
      const double ratio = (measure[i] / total) / base[i].p;
      res.max_density_ratio = std::max(res.max_density_ratio, ratio);
    }

    std::optional<Hypothesis> h;
    double view_error = 1.0;
    int attempts = 0;
    for (; attempts < retries; ++attempts) {
      ++res.weak_calls;
      auto cand = weak.run(view, Rng::derive(seed, static_cast<uint64_t>(round), attempts));
      if (!cand) continue;
      const double err = hypothesis_error(*cand, view);
      if (err <= 0.5 - gamma + kErrTol) {
        h = std::move(cand);
        view_error = err;
        break;
      }
    }
    if (!h) {
      if (accepted.empty())
        throw std::runtime_error("boosting: weak learner failed " + std::to_string(retries) +
                                 " consecutive attempts at round " + std::to_string(round));
      res.stop = BoostStop::WeakStall;
      break;
    }

    BoostRound rec;
    rec.attempts = attempts + 1;
    rec.view_error = view_error;
    rec.margin = 0.5 - view_error;
    // Demote by the observed margin, never by less than gamma and never
    // below half, so progress scales with the round's quality while the
    // measure stays positive.
    const double eta = std::clamp(rec.margin, gamma, 0.5);
    rec.step = 1.0 - eta;

    std::vector<uint8_t> pred(m);
    double base_err = 0.0;
    for (size_t i = 0; i < m; ++i) {
      pred[i] = static_cast<uint8_t>(h->eval(base[i].x));
      if (pred[i] != base[i].y) base_err += base[i].p;
      if (pred[i] == base[i].y) measure[i] *= rec.step;
    }
    rec.base_error = base_err;
    double after = 0.0;
    for (double v : measure) after += v;
    rec.measure_total = after;
    if (after > total * (1.0 + 1e-12)) res.measure_monotone = false;

    accepted.push_back(std::move(*h));
    preds.push_back(std::move(pred));
    res.rounds.push_back(rec);
    res.rounds_run = round + 1;
  }

  // Candidate selection on the input data: prefix majorities first, then
  // single rounds; strict improvement keeps the earliest winner.
  const size_t T = accepted.size();
  if (T == 0) throw std::runtime_error("boosting: no round was accepted");  // unreachable

  double best_err = 2.0;
  bool best_is_prefix = true;
  size_t best_index = 0;

  std::vector<int> vote(m, 0);
  for (size_t k = 0; k < T; ++k) {
    double err = 0.0;
    for (size_t i = 0; i < m; ++i) {
      vote[i] += preds[k][i] ? 1 : -1;
      const int maj = vote[i] >= 0 ? 1 : 0;
      if (maj != base[i].y) err += base[i].p;
    }
    if (err < best_err - 1e-15) {
      best_err = err;
      best_is_prefix = true;
      best_index = k + 1;
    }
  }
  for (size_t t = 0; t < T; ++t) {
    res.best_single_error = std::min(res.best_single_error, res.rounds[t].base_error);
    if (res.rounds[t].base_error < best_err - 1e-15) {
      best_err = res.rounds[t].base_error;
      best_is_prefix = false;
      best_index = t;
    }
  }

  std::vector<std::pair<double, Hypothesis>> terms;
  if (best_is_prefix) {
    for (size_t k = 0; k < best_index; ++k) terms.push_back({1.0, accepted[k]});
    res.chosen = "prefix " + std::to_string(best_index);
  } else {
    terms.push_back({1.0, accepted[best_index]});
    res.chosen = "single " + std::to_string(best_index);
  }
  res.hypothesis = Hypothesis::weighted_majority(std::move(terms));
  res.train_error = best_err;
  return res;
}

}  // namespace

BoostResult aboost(const WeakLearnerHandle& weak, const ExplicitDistribution& data,
                   double alpha, double gamma, const BoostConfig& cfg) {
  check_weak_params(alpha, gamma);
  const int64_t rounds = cfg.rounds > 0
                             ? cfg.rounds
                             : static_cast<int64_t>(std::ceil(4.0 / (gamma * gamma)));
  const double floor_value = cfg.floor > 0.0 ? cfg.floor : alpha / 4.0;
  return run_rounds(weak, flatten(data), data.dimension(), gamma, floor_value, rounds,
                    cfg.retries, cfg.seed);
}

BoostResult aboost(const WeakLearnerHandle& weak, const EmpiricalSample& data,
                   double alpha, double gamma, const BoostConfig& cfg) {
  return aboost(weak, collapse_sample(data), alpha, gamma, cfg);
}

int64_t aboost_di_budget(double gamma, double delta) {
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("aboost_di_budget: gamma must lie in (0, 1/2)");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("aboost_di_budget: delta must lie in (0, 1]");
  const double raw = std::ceil(std::log(1.0 / delta) / (gamma * gamma * delta));
  return std::max<int64_t>(1, static_cast<int64_t>(raw));
}

BoostDiResult aboost_di(const WeakLearnerHandle& weak, const ExplicitDistribution& data,
                        double alpha, double gamma, double eps, const BoostConfig& cfg) {
  check_weak_params(alpha, gamma);
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("aboost_di: eps must lie in (0, 1)");

  BoostDiResult out;
  const auto base = flatten(data);
  double guess = eps;
  for (int k = 0;; ++k) {
    const bool last = guess >= 1.0;
    if (last) guess = 1.0;

    BoostDiGuess rec;
    rec.delta_guess = guess;
    rec.rounds_budget = aboost_di_budget(gamma, guess);
    const int64_t rounds = cfg.rounds > 0 ? std::min(cfg.rounds, rec.rounds_budget)
                                          : rec.rounds_budget;
    const double floor_value = cfg.floor > 0.0 ? cfg.floor : (guess + eps) / 4.0;

    const int calls_before = out.total_weak_calls;
    BoostResult run = run_rounds(weak, base, data.dimension(), gamma, floor_value, rounds,
                                 cfg.retries, Rng::derive(cfg.seed, 0xd1, k));
    rec.weak_calls = run.weak_calls;
    out.total_weak_calls = calls_before + run.weak_calls;
    rec.train_error = run.train_error;
    rec.accepted = run.train_error <= guess + eps + kErrTol;
    out.guesses.push_back(rec);

    if (rec.accepted || last) {
      out.hypothesis = run.hypothesis;
      out.train_error = run.train_error;
      out.final_guess = guess;
      out.winning = std::move(run);
      return out;
    }
    guess *= 2.0;
  }
}

BoostDiResult aboost_di(const WeakLearnerHandle& weak, const EmpiricalSample& data,
                        double alpha, double gamma, double eps, const BoostConfig& cfg) {
  return aboost_di(weak, collapse_sample(data), alpha, gamma, eps, cfg);
}

}  // namespace adl
