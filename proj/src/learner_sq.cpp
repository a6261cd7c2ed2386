#include "adl/learner_sq.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

#include "adl/learner_sample.hpp"
#include "adl/rng.hpp"

namespace adl {

namespace {

std::string key_hash(const std::string& s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(Rng::hash_bytes(s.data(), s.size(), 0x5941)));
  return std::string(buf);
}

// Point masses from superset-sum moments, in place: a[C] starts as the sum
// of all patterns containing C and ends as the mass of exactly C.
void superset_mobius(std::vector<double>& a, int k) {
  for (int b = 0; b < k; ++b)
    for (uint32_t m = 0; m < (1u << k); ++m)
      if (!((m >> b) & 1)) a[m] -= a[m | (1u << b)];
}

QueryBudget budget_delta(const QueryBudget& before, const QueryBudget& after,
                         double step_min_tolerance) {
  QueryBudget d;
  d.stat_queries = after.stat_queries - before.stat_queries;
  d.cstat_queries = after.cstat_queries - before.cstat_queries;
  d.min_tolerance = step_min_tolerance;
  return d;
}

}  // namespace

int alg2_default_T(int n, int r, double eps, double iter_c) {
  if (n < 1 || r < 1) throw std::invalid_argument("alg2_default_T: arguments must be positive");
  const double raw = iter_c * n * std::log(1.0 / eps) / r;
  return std::max(1, static_cast<int>(std::ceil(raw)));
}

int alg2_default_degree(int r, int T, double eps, double degree_c) {
  if (r < 1 || T < 1) throw std::invalid_argument("alg2_default_degree: arguments must be positive");
  const double raw = degree_c * std::sqrt(static_cast<double>(r)) * std::log(T / eps);
  return std::max(1, static_cast<int>(std::ceil(raw)));
}

SqL1Result sq_l1_regression(SqOracle& oracle, const Region& region, const CoordSet& I,
                            const SqL1Options& opt) {
  const int n = oracle.distribution().dimension();
  if (I.dimension() != n)
    throw std::invalid_argument("sq l1 regression: coordinate set dimension mismatch");
  if (!(opt.eps_prime > 0.0))
    throw std::invalid_argument("sq l1 regression: eps_prime must be positive");
  if (!(opt.mass_floor > 0.0))
    throw std::invalid_argument("sq l1 regression: mass floor must be positive");
  if (opt.degree < 0) throw std::invalid_argument("sq l1 regression: degree must be nonnegative");
  if (opt.active_cap < 0 || opt.active_cap > 26)
    throw std::invalid_argument("sq l1 regression: active cap outside [0, 26]");

  SqL1Result res;
  const std::string rkey = key_hash(region.describe() + "|" + I.to_string());
  const double gamma = opt.mass_floor;

  // Coordinates that actually fire on the region.  Everything else is
  // treated as constant 0, which costs at most eps'/8 of conditional mass.
  const double tau_act = std::max(gamma * opt.eps_prime / (32.0 * n), 1e-14);
  double min_tau = tau_act;
  for (int i : I.indices()) {
    StatQuery q;
    q.descriptor = "sql1:act:" + rkey + ":" + std::to_string(i);
    q.eval = [region, i](const BitVector& x, int) {
      return (x.get(i) && region.contains(x)) ? 1.0 : 0.0;
    };
    if (oracle.stat(q, tau_act) >= 2.0 * tau_act) res.active.push_back(i);
  }
  if (static_cast<int>(res.active.size()) > opt.active_cap)
    throw std::invalid_argument("sq l1 regression: active coordinate cap exceeded");
  const int k = static_cast<int>(res.active.size());
  const uint32_t patterns = 1u << k;

  // Joint monomial moments over the active coordinates; the inclusion-
  // exclusion amplification of 3^k sets the tolerance.
  const double tau_m = std::max(gamma * opt.eps_prime / (8.0 * std::pow(3.0, k)), 1e-14);
  min_tau = std::min(min_tau, tau_m);
  std::vector<double> m1(patterns, 0.0), my(patterns, 0.0);
  for (uint32_t mask = 0; mask < patterns; ++mask) {
    StatQuery q1;
    q1.descriptor = "sql1:m1:" + rkey + ":" + std::to_string(mask);
    q1.eval = [region, mask, active = res.active](const BitVector& x, int) {
      for (int b = 0; b < static_cast<int>(active.size()); ++b)
        if (((mask >> b) & 1) && !x.get(active[b])) return 0.0;
      return region.contains(x) ? 1.0 : 0.0;
    };
    m1[mask] = oracle.stat(q1, tau_m);
    StatQuery qy = q1;
    qy.descriptor = "sql1:my:" + rkey + ":" + std::to_string(mask);
    qy.eval = [region, mask, active = res.active](const BitVector& x, int y) {
      if (y != 1) return 0.0;
      for (int b = 0; b < static_cast<int>(active.size()); ++b)
        if (((mask >> b) & 1) && !x.get(active[b])) return 0.0;
      return region.contains(x) ? 1.0 : 0.0;
    };
    my[mask] = oracle.stat(qy, tau_m);
  }
  const double p_b_hat = m1[0];
  if (p_b_hat - tau_m < gamma)
    throw std::runtime_error("sq l1 regression: region mass estimate below the certified floor");

  superset_mobius(m1, k);
  superset_mobius(my, k);

  double z = 0.0;
  for (uint32_t m = 0; m < patterns; ++m) {
    m1[m] = std::max(0.0, m1[m]);
    my[m] = std::clamp(my[m], 0.0, m1[m]);
    z += m1[m];
  }
  if (z <= 0.0) throw std::runtime_error("sq l1 regression: reconstruction collapsed");

  std::vector<WeightedExample> recon;
  recon.reserve(2 * patterns);
  for (uint32_t m = 0; m < patterns; ++m) {
    if (m1[m] <= 0.0) continue;
    BitVector x(n);
    for (int b = 0; b < k; ++b)
      if ((m >> b) & 1) x.set(res.active[b], true);
    const double p1 = my[m] / z;
    const double p0 = (m1[m] - my[m]) / z;
    if (p1 > 0.0) recon.push_back({x, 1, p1});
    if (p0 > 0.0) recon.push_back({x, 0, p0});
  }
  ExplicitDistribution cond(n, std::move(recon));
  res.patterns = static_cast<int64_t>(cond.support().size());

  const CoordSet active_set = CoordSet::from_indices(n, res.active);
  L1FitResult fit = l1_fit(cond, active_set, std::min(opt.degree, k), opt.feature_cap);
  res.loss = fit.loss;
  res.degree_used = fit.degree_used;

  // Rounding threshold picked by querying the conditional error of every
  // grid candidate.  The polynomial only reads active coordinates, so every
  // point of the region shares its value with some reconstructed pattern;
  // midpoints between consecutive distinct values plus the two sentinels
  // therefore realize every threshold behavior on the region.
  std::vector<double> values;
  values.reserve(cond.support().size());
  for (const auto& e : cond.support()) values.push_back(fit.poly.eval(e.x));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<double> grid;
  grid.push_back(values.front() - 1.0);
  for (size_t j = 0; j + 1 < values.size(); ++j)
    grid.push_back(0.5 * (values[j] + values[j + 1]));
  grid.push_back(values.back() + 1.0);
  const std::string gkey =
      key_hash(rkey + key_hash(std::string(reinterpret_cast<const char*>(grid.data()),
                                           grid.size() * sizeof(double))));
  const double tau_thr = std::max(gamma * opt.eps_prime / 8.0, 1e-14);
  min_tau = std::min(min_tau, tau_thr);
  int best = -1;
  double best_est = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < grid.size(); ++j) {
    Hypothesis h = Hypothesis::threshold_poly(fit.poly, grid[j]);
    StatQuery q;
    q.descriptor = "sql1:thr:" + gkey + ":" + std::to_string(j);
    q.eval = [region, h](const BitVector& x, int y) {
      return (region.contains(x) && h.eval(x) != y) ? 1.0 : 0.0;
    };
    const double joint = oracle.stat(q, tau_thr);
    const double est = ratio_estimate(joint, p_b_hat, tau_thr, gamma);
    if (est < best_est) {
      best_est = est;
      best = static_cast<int>(j);
    }
  }
  res.threshold = grid[best];
  res.h = Hypothesis::threshold_poly(fit.poly, res.threshold);
  res.est_error = best_est;
  res.min_tolerance = min_tau;
  return res;
}

namespace {

struct Alg2Resolved {
  double eps;
  int r;
  int T;
  int degree;
};

Alg2Resolved alg2_resolve(const Alg2Config& cfg, int n) {
  if (!(cfg.eps > 0.0 && cfg.eps < 0.5))
    throw std::invalid_argument("alg2: eps must lie in (0, 1/2)");
  const int r = cfg.r > 0 ? cfg.r : alg1_default_r(n);
  const int T = cfg.T > 0 ? cfg.T : alg2_default_T(n, r, cfg.eps, cfg.iter_c);
  int degree = alg2_default_degree(r, T, cfg.eps, cfg.degree_c);
  if (cfg.degree_cap > 0) degree = std::min(degree, cfg.degree_cap);
  return {cfg.eps, r, T, degree};
}

// True conditional one-probability over the oracle's distribution; only the
// forced-correct hook looks at this.
bool exact_heavy_exists(const ExplicitDistribution& d, const Region& u, const CoordSet& S,
                        const CoordSet& I, double threshold, int* pick) {
  double mass_u = 0.0;
  std::vector<double> ones(static_cast<size_t>(d.dimension()), 0.0);
  for (const auto& e : d.support()) {
    if (!u.contains(e.x)) continue;
    mass_u += e.p;
    for (int i : S.indices())
      if (e.x.get(i)) ones[static_cast<size_t>(i)] += e.p;
  }
  if (mass_u <= 0.0) return false;
  for (int i : S.indices()) {
    if (!I.get(i)) continue;
    if (ones[static_cast<size_t>(i)] / mass_u >= threshold) {
      *pick = i;
      return true;
    }
  }
  return false;
}

}  // namespace

Alg2RunResult alg2_single_run(SqOracle& oracle, const Alg2Config& cfg, Alg2Cache* cache) {
  const int n = oracle.distribution().dimension();
  const Alg2Resolved rc = alg2_resolve(cfg, n);
  if (cfg.force_correct_guesses && cfg.planted.dimension() != n)
    throw std::invalid_argument("alg2: force_correct_guesses requires the planted support");
  const bool cacheable = cache != nullptr && oracle.backend() == SqBackend::Exact;

  Rng rng(cfg.seed);
  Region U = Region::all();
  CoordSet I = CoordSet::all_ones(n);
  std::vector<std::pair<Region, Hypothesis>> entries;
  std::string state_key = "n" + std::to_string(n) + ":r" + std::to_string(rc.r);

  const double tau1 = rc.eps * rc.r / (800.0 * n);
  const double tau_exit = rc.eps / 100.0;
  const double drop_ratio = 1.01 * rc.r / n;
  const double mass_floor = (rc.eps / 3.0 - rc.eps / 100.0) / 4.0;

  Alg2RunResult res;
  for (int t = 0; t < rc.T; ++t) {
    Alg2Iteration it;

    bool heavy = false;
    int guess = -1;
    if (cfg.force_correct_guesses) {
      heavy = exact_heavy_exists(oracle.distribution(), U, cfg.planted, I,
                                 static_cast<double>(rc.r) / n, &guess);
    } else if (rng.coin()) {
      const std::vector<int> pool = I.indices();
      if (!pool.empty()) {
        heavy = true;
        guess = pool[rng.below(pool.size())];
      }
    }

    Region carve;
    if (heavy) {
      it.branch = Alg2Branch::HeavyGuess;
      it.guessed = guess;
      carve = Region::coordinate_one(guess);
      entries.emplace_back(carve, Hypothesis::constant(1));
      I.set(guess, false);
      state_key += "|g" + std::to_string(guess);
    } else {
      it.branch = Alg2Branch::LightRegression;
      const std::string step_key = state_key + "|I" + I.to_string();
      bool replayed = false;
      if (cacheable) {
        auto found = cache->light_steps.find(step_key);
        if (found != cache->light_steps.end()) {
          const Alg2LightStep& s = found->second;
          it.dropped = s.dropped;
          it.p_u_hat = s.p_u_hat;
          it.block_mass_hat = s.block_mass_hat;
          I = CoordSet::from_string(s.coords_after);
          carve = Region::weight_at_most(I, 2 * rc.r);
          entries.emplace_back(carve, s.regressed ? s.partial : Hypothesis::constant(1));
          oracle.merge_budget(s.spent);
          replayed = true;
        }
      }
      if (!replayed) {
        const QueryBudget before = oracle.budget();
        double step_min = tau1;
        const std::string ukey = key_hash(state_key);

        StatQuery qu;
        qu.descriptor = "a2:PU:" + ukey;
        qu.eval = [U](const BitVector& x, int) { return U.contains(x) ? 1.0 : 0.0; };
        const double p_u = oracle.stat(qu, tau1);
        it.p_u_hat = p_u;

        std::vector<int> dropped;
        if (p_u > rc.eps / 3.0) {
          // Ratio guard: sound because the exit check would otherwise have
          // fired last iteration, so the denominator is well above zero.
          for (int i : I.indices()) {
            StatQuery qi;
            qi.descriptor = "a2:Pi:" + ukey + ":" + std::to_string(i);
            qi.eval = [U, i](const BitVector& x, int) {
              return (x.get(i) && U.contains(x)) ? 1.0 : 0.0;
            };
            if (oracle.stat(qi, tau1) / p_u >= drop_ratio) dropped.push_back(i);
          }
        }
        for (int i : dropped) I.set(i, false);
        it.dropped = dropped;

        carve = Region::weight_at_most(I, 2 * rc.r);
        const Region block = Region::intersect({U, carve});

        StatQuery qb;
        qb.descriptor = "a2:PB:" + key_hash(state_key + "|B" + I.to_string());
        qb.eval = [block](const BitVector& x, int) { return block.contains(x) ? 1.0 : 0.0; };
        const double p_b = oracle.stat(qb, tau1);
        it.block_mass_hat = p_b;

        bool regressed = false;
        Hypothesis partial = Hypothesis::constant(1);
        if (p_b > mass_floor + tau1) {
          // The estimate certifies true mass above mass_floor; handing the
          // regression half of that keeps its internal floor check clear of
          // both estimation errors.
          SqL1Options opt;
          opt.degree = rc.degree;
          opt.eps_prime = rc.eps / (100.0 * rc.T);
          opt.mass_floor = mass_floor / 2.0;
          opt.active_cap = cfg.active_cap;
          opt.feature_cap = cfg.feature_cap;
          SqL1Result reg = sq_l1_regression(oracle, block, I, opt);
          partial = reg.h;
          regressed = true;
          step_min = std::min(step_min, reg.min_tolerance);
        }
        entries.emplace_back(carve, partial);

        if (cacheable) {
          Alg2LightStep s;
          s.dropped = dropped;
          s.coords_after = I.to_string();
          s.p_u_hat = it.p_u_hat;
          s.block_mass_hat = it.block_mass_hat;
          s.regressed = regressed;
          s.partial = partial;
          s.spent = budget_delta(before, oracle.budget(), step_min);
          cache->light_steps.emplace(step_key, std::move(s));
        }
      }
      state_key += "|w" + I.to_string();
    }

    U = Region::minus(U, carve);
    it.remaining = I.to_string();

    // Exit check on the post-carve remainder.
    double residual;
    const std::string mkey = key_hash(state_key + "|U");
    bool have_mass = false;
    if (cacheable) {
      auto found = cache->masses.find(mkey);
      if (found != cache->masses.end()) {
        residual = found->second.first;
        oracle.merge_budget(found->second.second);
        have_mass = true;
      }
    }
    if (!have_mass) {
      const QueryBudget before = oracle.budget();
      StatQuery qr;
      qr.descriptor = "a2:exit:" + mkey;
      qr.eval = [U](const BitVector& x, int) { return U.contains(x) ? 1.0 : 0.0; };
      residual = oracle.stat(qr, tau_exit);
      if (cacheable)
        cache->masses.emplace(mkey, std::make_pair(residual, budget_delta(before, oracle.budget(),
                                                                          tau_exit)));
    }
    it.residual_hat = residual;

    if (residual <= rc.eps / 3.0) {
      it.finished = true;
      int def = 1;
      bool have_def = false;
      if (cacheable) {
        auto found = cache->defaults.find(mkey);
        if (found != cache->defaults.end()) {
          def = found->second.first;
          oracle.merge_budget(found->second.second);
          have_def = true;
        }
      }
      if (!have_def) {
        const QueryBudget before = oracle.budget();
        StatQuery q1;
        q1.descriptor = "a2:def1:" + mkey;
        q1.eval = [U](const BitVector& x, int y) {
          return (y == 0 && U.contains(x)) ? 1.0 : 0.0;
        };
        const double err_of_1 = oracle.stat(q1, tau_exit);
        StatQuery q0;
        q0.descriptor = "a2:def0:" + mkey;
        q0.eval = [U](const BitVector& x, int y) {
          return (y == 1 && U.contains(x)) ? 1.0 : 0.0;
        };
        const double err_of_0 = oracle.stat(q0, tau_exit);
        def = err_of_0 < err_of_1 ? 0 : 1;
        if (cacheable)
          cache->defaults.emplace(
              mkey, std::make_pair(def, budget_delta(before, oracle.budget(), tau_exit)));
      }
      res.trace.iterations.push_back(std::move(it));
      res.trace.default_label = def;
      res.hypothesis = Hypothesis::decision_list(entries, def);
      return res;
    }
    res.trace.iterations.push_back(std::move(it));
  }
  return res;
}

Alg2LearnerResult alg2_learner(SqOracle& oracle, const Alg2Config& cfg, int trials) {
  if (trials < 1) throw std::invalid_argument("alg2_learner: trials must be at least 1");
  if (!(cfg.eps > 0.0 && cfg.eps < 0.5))
    throw std::invalid_argument("alg2_learner: eps must lie in (0, 1/2)");

  Alg2Config run_cfg = cfg;
  run_cfg.eps = cfg.eps / 3.0;
  const double tau_est = cfg.eps / 3.0;

  Alg2Cache cache;
  Alg2LearnerResult out;
  out.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    auto clone = oracle.clone_for_trial(static_cast<uint64_t>(trial));
    run_cfg.seed = Rng::derive(cfg.seed, 0x2a, static_cast<uint64_t>(trial));
    Alg2RunResult run = alg2_single_run(*clone, run_cfg, &cache);
    oracle.merge_budget(clone->budget());
    if (run.hypothesis) {
      ++out.produced;
      const Hypothesis h = *run.hypothesis;
      StatQuery q;
      q.descriptor = "a2:est:" + key_hash(h.describe());
      q.eval = [h](const BitVector& x, int y) { return h.eval(x) != y ? 1.0 : 0.0; };
      const double est = oracle.stat(q, tau_est);
      if (est < out.est_error) {
        out.est_error = est;
        out.hypothesis = run.hypothesis;
        out.winning_trial = trial;
      }
    }
    out.traces.push_back(std::move(run.trace));
  }
  if (!out.hypothesis)
    throw std::runtime_error("alg2_learner: no candidate produced in " + std::to_string(trials) +
                             " trials");
  return out;
}

}  // namespace adl
