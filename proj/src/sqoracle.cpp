#include "adl/sqoracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "adl/rng.hpp"

namespace adl {

namespace {

double checked(double v, const std::string& descriptor) {
  if (!(std::abs(v) <= 1.0 + 1e-12))
    throw std::invalid_argument("query evaluation out of [-1,1]: " +
                                (descriptor.empty() ? "<anonymous>" : descriptor));
  return v;
}

}  // namespace

void QueryBudget::merge(const QueryBudget& other) {
  stat_queries += other.stat_queries;
  cstat_queries += other.cstat_queries;
  min_tolerance = std::min(min_tolerance, other.min_tolerance);
  wall_ms += other.wall_ms;
}

SqOracle::SqOracle(ExplicitDistribution d, SqBackend backend, uint64_t seed,
                   EmpiricalRule rule)
    : dist_(std::move(d)), backend_(backend), seed_(seed), rule_(rule) {
  cumulative_.reserve(dist_.support().size());
  double acc = 0.0;
  for (const auto& e : dist_.support()) {
    acc += e.p;
    cumulative_.push_back(acc);
  }
  if (!cumulative_.empty()) cumulative_.back() = 1.0;
}

int64_t SqOracle::empirical_samples(double tau) const {
  const double raw =
      std::ceil(rule_.c / (tau * tau) * std::log(2.0 / rule_.delta_q));
  if (raw >= static_cast<double>(rule_.sample_cap)) return rule_.sample_cap;
  return std::max<int64_t>(1, static_cast<int64_t>(raw));
}

double SqOracle::answer(const std::function<double(const BitVector&, int)>& f,
                        const std::string& descriptor, double tau, bool is_cstat) {
  if (!(tau > 0.0)) throw std::invalid_argument("sq oracle: tolerance must be positive");
  const auto t0 = std::chrono::steady_clock::now();

  double value = 0.0;
  if (backend_ == SqBackend::Empirical) {
    int64_t occurrence;
    {
      std::lock_guard<std::mutex> lock(mu_);
      occurrence = occurrences_[descriptor]++;
    }
    const uint64_t stream =
        Rng::hash_bytes(descriptor.data(), descriptor.size(), seed_);
    Rng rng(Rng::derive(stream, static_cast<uint64_t>(occurrence), is_cstat ? 1 : 0));
    const int64_t m = empirical_samples(tau);
    double acc = 0.0;
    const auto& supp = dist_.support();
    for (int64_t i = 0; i < m; ++i) {
      const double u = rng.uniform01();
      const size_t j = static_cast<size_t>(
          std::lower_bound(cumulative_.begin(), cumulative_.end(), u) -
          cumulative_.begin());
      const auto& e = supp[std::min(j, supp.size() - 1)];
      acc += checked(f(e.x, e.y), descriptor);
    }
    value = acc / static_cast<double>(m);
  } else {
    double exact = 0.0;
    for (const auto& e : dist_.support())
      exact += e.p * checked(f(e.x, e.y), descriptor);
    if (backend_ == SqBackend::Exact) {
      value = exact;
    } else {
      const uint64_t h = Rng::hash_bytes(descriptor.data(), descriptor.size(),
                                         Rng::derive(seed_, 0xad, is_cstat ? 1 : 0));
      const double sign = (h & 1) ? 1.0 : -1.0;
      value = std::clamp(exact + sign * 0.99 * tau, -1.0, 1.0);
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (is_cstat)
      ++budget_.cstat_queries;
    else
      ++budget_.stat_queries;
    budget_.min_tolerance = std::min(budget_.min_tolerance, tau);
    budget_.wall_ms +=
        std::chrono::duration<double, std::milli>(t1 - t0).count();
  }
  return value;
}

double SqOracle::stat(const StatQuery& q, double tau) {
  if (!q.eval) throw std::invalid_argument("sq oracle: empty query");
  return answer(q.eval, q.descriptor, tau, false);
}

double SqOracle::cstat(const CorrQuery& q, double tau) {
  if (!q.eval) throw std::invalid_argument("sq oracle: empty query");
  const auto& inner = q.eval;
  return answer(
      [&inner](const BitVector& x, int y) {
        return (2 * y - 1) * inner(x);
      },
      q.descriptor, tau, true);
}

QueryBudget SqOracle::budget() const {
  std::lock_guard<std::mutex> lock(mu_);
  return budget_;
}

void SqOracle::merge_budget(const QueryBudget& other) {
  std::lock_guard<std::mutex> lock(mu_);
  budget_.merge(other);
}

std::unique_ptr<SqOracle> SqOracle::clone_for_trial(uint64_t trial) const {
  return std::make_unique<SqOracle>(dist_, backend_,
                                    Rng::derive(seed_, 0xc1, trial), rule_);
}

double ratio_estimate(double p1_hat, double p2_hat, double tau, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("ratio_estimate: gamma must be positive");
  if (!(tau >= 0.0)) throw std::invalid_argument("ratio_estimate: negative tolerance");
  if (p2_hat - tau < gamma)
    throw std::invalid_argument("ratio_estimate: guard P2 - tau >= gamma violated");
  return p1_hat / p2_hat;
}

}  // namespace adl
