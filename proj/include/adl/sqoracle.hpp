#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "adl/dataset.hpp"

namespace adl {

// Bounded query over labeled examples; evaluations must stay in [-1, 1].
struct StatQuery {
  std::function<double(const BitVector&, int)> eval;
  std::string descriptor;
};

// Bounded query over points only, answered as E[(2y-1) q(x)].
struct CorrQuery {
  std::function<double(const BitVector&)> eval;
  std::string descriptor;
};

struct QueryBudget {
  int64_t stat_queries = 0;
  int64_t cstat_queries = 0;
  double min_tolerance = std::numeric_limits<double>::infinity();
  double wall_ms = 0.0;

  int64_t total_queries() const { return stat_queries + cstat_queries; }
  void merge(const QueryBudget& other);
};

enum class SqBackend { Exact, Empirical, Adversarial };

// Samples-per-answer rule for the empirical backend: the Hoeffding count
// c/tau^2 * ln(2/delta_q), capped.
struct EmpiricalRule {
  double c = 2.0;
  double delta_q = 1e-6;
  int64_t sample_cap = 10000000;
};

// Answers statistical queries about a fixed explicit distribution within
// the requested tolerance.  Exact returns the expectation itself;
// Empirical means over enough fresh draws for the Hoeffding bound at the
// per-query failure budget; Adversarial returns the expectation shifted by
// 0.99 tau with a sign seeded from the query descriptor, so identical
// queries always get identical answers and cached replies stay valid.
class SqOracle {
public:
  SqOracle(ExplicitDistribution d, SqBackend backend, uint64_t seed = 0,
           EmpiricalRule rule = EmpiricalRule());
  SqOracle(const SqOracle&) = delete;
  SqOracle& operator=(const SqOracle&) = delete;

  double stat(const StatQuery& q, double tau);
  double cstat(const CorrQuery& q, double tau);

  SqBackend backend() const { return backend_; }
  const ExplicitDistribution& distribution() const { return dist_; }
  QueryBudget budget() const;
  void merge_budget(const QueryBudget& other);

  // independent oracle for a concurrent trial: same instance, derived
  // randomness, fresh budget
  std::unique_ptr<SqOracle> clone_for_trial(uint64_t trial) const;

  // samples needed for one empirical answer at tolerance tau
  int64_t empirical_samples(double tau) const;

private:
  double answer(const std::function<double(const BitVector&, int)>& f,
                const std::string& descriptor, double tau, bool is_cstat);

  ExplicitDistribution dist_;
  SqBackend backend_;
  uint64_t seed_;
  EmpiricalRule rule_;
  std::vector<double> cumulative_;

  mutable std::mutex mu_;
  QueryBudget budget_;
  std::unordered_map<std::string, int64_t> occurrences_;
};

// P1_hat / P2_hat with the guard P2_hat - tau >= gamma > 0; under it the
// estimate is within 2 tau / gamma of the true ratio whenever both inputs
// are tau-accurate and P1 <= P2.
double ratio_estimate(double p1_hat, double p2_hat, double tau, double gamma);

// Access wrapper exposing only correlational queries.
class CsqOracle {
public:
  explicit CsqOracle(SqOracle& base) : base_(base) {}
  double cstat(const CorrQuery& q, double tau) { return base_.cstat(q, tau); }
  QueryBudget budget() const { return base_.budget(); }
  SqBackend backend() const { return base_.backend(); }
  const ExplicitDistribution& distribution() const { return base_.distribution(); }

private:
  SqOracle& base_;
};

}  // namespace adl
