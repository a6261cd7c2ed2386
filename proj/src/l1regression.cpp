#include "adl/l1regression.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "adl/chebyshev.hpp"
#include "adl/lp.hpp"

namespace adl {

namespace {

struct WeightedData {
  int n = 0;
  std::vector<WeightedExample> pts;
};

WeightedData collapse(const ExplicitDistribution& d) {
  return {d.dimension(), d.support()};
}

WeightedData collapse(const EmpiricalSample& s) {
  if (s.size() == 0) throw std::invalid_argument("l1 regression: empty sample");
  // merge repeated (x, y) draws into one weighted record
  std::unordered_map<size_t, std::vector<size_t>> buckets;
  WeightedData out;
  out.n = s.dimension();
  const double w = 1.0 / static_cast<double>(s.size());
  for (const auto& e : s.examples()) {
    const size_t hk = e.x.hash() * 2 + static_cast<size_t>(e.y);
    auto& bucket = buckets[hk];
    bool merged = false;
    for (size_t idx : bucket) {
      if (out.pts[idx].x == e.x && out.pts[idx].y == e.y) {
        out.pts[idx].p += w;
        merged = true;
        break;
      }
    }
    if (!merged) {
      bucket.push_back(out.pts.size());
      out.pts.push_back({e.x, e.y, w});
    }
  }
  return out;
}

L1FitResult fit_core(const WeightedData& data, const CoordSet& I, int d,
                     int64_t feature_cap) {
  if (data.pts.empty()) throw std::invalid_argument("l1 regression: empty data");
  if (I.dimension() != data.n)
    throw std::invalid_argument("l1 regression: coordinate set dimension mismatch");

  const std::vector<CoordSet> feats = monomial_features(I, d, feature_cap);
  const int F = static_cast<int>(feats.size());
  const int M = static_cast<int>(data.pts.size());

  // vars: a_A, b_A (coefficient split), then u+_j, u-_j
  LpProblem lp;
  lp.num_vars = 2 * F + 2 * M;
  lp.objective.assign(lp.num_vars, 0.0);
  for (int j = 0; j < M; ++j) {
    lp.objective[2 * F + 2 * j] = data.pts[j].p;
    lp.objective[2 * F + 2 * j + 1] = data.pts[j].p;
  }
  for (int j = 0; j < M; ++j) {
    LpRow row;
    row.coeffs.assign(lp.num_vars, 0.0);
    for (int f = 0; f < F; ++f) {
      if (feats[f].is_subset_of(data.pts[j].x)) {
        row.coeffs[2 * f] = 1.0;
        row.coeffs[2 * f + 1] = -1.0;
      }
    }
    row.coeffs[2 * F + 2 * j] = -1.0;
    row.coeffs[2 * F + 2 * j + 1] = 1.0;
    row.sense = RowSense::Eq;
    row.rhs = static_cast<double>(data.pts[j].y);
    lp.rows.push_back(std::move(row));
  }

  const LpSolution sol = lp_solve(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error("l1 regression: LP did not reach an optimum");

  std::vector<MultilinearTerm> terms;
  for (int f = 0; f < F; ++f) {
    const double c = sol.x[2 * f] - sol.x[2 * f + 1];
    if (c != 0.0) terms.push_back({feats[f], c});
  }
  L1FitResult res{MultilinearPolynomial(data.n, std::move(terms)), 0.0,
                  std::min(d, I.count())};
  for (const auto& e : data.pts)
    res.loss += e.p * std::abs(res.poly.eval(e.x) - static_cast<double>(e.y));
  return res;
}

std::vector<double> grid_core(const MultilinearPolynomial& p, const WeightedData& data,
                              double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("threshold grid: eps must be positive");
  std::vector<double> vals;
  vals.reserve(data.pts.size());
  for (const auto& e : data.pts) vals.push_back(p.eval(e.x));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

  std::vector<double> grid;
  const double lo = vals.front(), hi = vals.back();
  const double step = eps / 8.0;
  // arithmetic sweep clipped to a window around the label range; thresholds
  // beyond the value range are covered by the sentinels
  const double sweep_hi = std::min(hi + step, 2.0 + step);
  const double sweep_lo = std::max(lo - step, -2.0 - step);
  for (double t = 0.0; t <= sweep_hi; t += step)
    if (t >= sweep_lo) grid.push_back(t);
  for (double t = -step; t >= sweep_lo; t -= step)
    if (t <= sweep_hi) grid.push_back(t);
  for (size_t i = 0; i + 1 < vals.size(); ++i)
    grid.push_back(0.5 * (vals[i] + vals[i + 1]));
  grid.push_back(lo - 1.0);
  grid.push_back(hi + 1.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

RoundResult round_core(const MultilinearPolynomial& p, const WeightedData& data,
                       const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("round_to_hypothesis: empty grid");
  std::vector<double> vals;
  vals.reserve(data.pts.size());
  for (const auto& e : data.pts) vals.push_back(p.eval(e.x));

  std::vector<double> sorted_grid = grid;
  std::sort(sorted_grid.begin(), sorted_grid.end());

  double best_t = sorted_grid.front();
  double best_err = 2.0;
  for (double t : sorted_grid) {
    double err = 0.0;
    for (size_t j = 0; j < vals.size(); ++j) {
      const int pred = vals[j] >= t ? 1 : 0;
      if (pred != data.pts[j].y) err += data.pts[j].p;
    }
    if (err < best_err - 1e-15) {
      best_err = err;
      best_t = t;
    }
  }
  return {Hypothesis::threshold_poly(p, best_t), best_t, best_err};
}

template <typename Data>
L1LearnerResult learner_core(const Data& data, const CoordSet& I, double eps,
                             int64_t feature_cap) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("l1_regress_learner: eps must lie in (0, 1)");
  const WeightedData wd = collapse(data);
  if (I.dimension() != wd.n)
    throw std::invalid_argument("l1_regress_learner: dimension mismatch");

  int band = 0;
  for (const auto& e : wd.pts) band = std::max(band, e.x.count_and(I));

  // the fitted class must contain the band approximator of every
  // disjunction in I at accuracy eps/4
  const int approx_degree = build_approx(std::max(band, 1), eps / 4.0).degree();
  // monomials larger than the band vanish on every data point
  const int d = std::min(approx_degree, std::max(band, 0));

  L1FitResult fit = fit_core(wd, I, d, feature_cap);
  RoundResult rounded =
      round_core(fit.poly, wd, grid_core(fit.poly, wd, eps));
  return {rounded.h, rounded.error, fit.loss, fit.degree_used, rounded.threshold};
}

}  // namespace

std::vector<CoordSet> monomial_features(const CoordSet& I, int d, int64_t feature_cap) {
  if (d < 0) throw std::invalid_argument("monomial_features: negative degree");
  const std::vector<int> idx = I.indices();
  const int k = static_cast<int>(idx.size());
  const int dmax = std::min(d, k);

  // count first; C(k, <=dmax) can dwarf the cap
  int64_t count = 0;
  double running = 1.0;  // C(k, s)
  for (int s = 0; s <= dmax; ++s) {
    if (s > 0) running = running * (k - s + 1) / s;
    count += running > 2e18 ? feature_cap + 1 : static_cast<int64_t>(running + 0.5);
    if (count > feature_cap)
      throw std::invalid_argument("monomial_features: feature cap exceeded");
  }

  std::vector<CoordSet> out;
  out.reserve(static_cast<size_t>(count));
  std::vector<int> comb;
  auto emit = [&]() {
    std::vector<int> chosen;
    chosen.reserve(comb.size());
    for (int c : comb) chosen.push_back(idx[c]);
    out.push_back(CoordSet::from_indices(I.dimension(), chosen));
  };
  auto rec = [&](auto&& self, int start, int need) -> void {
    if (need == 0) {
      emit();
      return;
    }
    for (int i = start; i <= k - need; ++i) {
      comb.push_back(i);
      self(self, i + 1, need - 1);
      comb.pop_back();
    }
  };
  for (int s = 0; s <= dmax; ++s) rec(rec, 0, s);
  return out;
}

L1FitResult l1_fit(const ExplicitDistribution& data, const CoordSet& I, int d,
                   int64_t feature_cap) {
  return fit_core(collapse(data), I, d, feature_cap);
}

L1FitResult l1_fit(const EmpiricalSample& data, const CoordSet& I, int d,
                   int64_t feature_cap) {
  return fit_core(collapse(data), I, d, feature_cap);
}

std::vector<double> default_threshold_grid(const MultilinearPolynomial& p,
                                           const ExplicitDistribution& data, double eps) {
  return grid_core(p, collapse(data), eps);
}

std::vector<double> default_threshold_grid(const MultilinearPolynomial& p,
                                           const EmpiricalSample& data, double eps) {
  return grid_core(p, collapse(data), eps);
}

RoundResult round_to_hypothesis(const MultilinearPolynomial& p,
                                const ExplicitDistribution& data,
                                const std::vector<double>& grid) {
  return round_core(p, collapse(data), grid);
}

RoundResult round_to_hypothesis(const MultilinearPolynomial& p, const EmpiricalSample& data,
                                const std::vector<double>& grid) {
  return round_core(p, collapse(data), grid);
}

L1LearnerResult l1_regress_learner(const ExplicitDistribution& data, const CoordSet& I,
                                   double eps, int64_t feature_cap) {
  return learner_core(data, I, eps, feature_cap);
}

L1LearnerResult l1_regress_learner(const EmpiricalSample& data, const CoordSet& I,
                                   double eps, int64_t feature_cap) {
  return learner_core(data, I, eps, feature_cap);
}

}  // namespace adl
