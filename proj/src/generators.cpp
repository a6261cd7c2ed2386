#include "adl/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "adl/rng.hpp"

namespace adl {

EmpiricalSample draw(const ExplicitDistribution& d, int64_t count, uint64_t seed) {
  if (count <= 0) throw std::invalid_argument("draw: count must be positive");
  const auto& supp = d.support();
  std::vector<double> cum(supp.size());
  double acc = 0.0;
  for (size_t i = 0; i < supp.size(); ++i) {
    acc += supp[i].p;
    cum[i] = acc;
  }
  Rng rng(Rng::derive(seed, 0x11));
  std::vector<LabeledExample> out;
  out.reserve(static_cast<size_t>(count));
  for (int64_t i = 0; i < count; ++i) {
    const double u = rng.uniform01() * acc;
    const size_t idx = static_cast<size_t>(
        std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
    const auto& e = supp[std::min(idx, supp.size() - 1)];
    out.push_back({e.x, e.y});
  }
  return EmpiricalSample(d.dimension(), std::move(out));
}

double region_mass(const ExplicitDistribution& d, const Region& region) {
  double m = 0.0;
  for (const auto& e : d.support())
    if (region.contains(e.x)) m += e.p;
  return m;
}

ExplicitDistribution condition_on(const ExplicitDistribution& d, const Region& region) {
  std::vector<WeightedExample> out;
  double mass = 0.0;
  for (const auto& e : d.support()) {
    if (region.contains(e.x)) {
      out.push_back(e);
      mass += e.p;
    }
  }
  if (out.empty() || mass <= 0.0)
    throw std::runtime_error("condition_on: region has zero mass");
  for (auto& e : out) e.p /= mass;
  return ExplicitDistribution(d.dimension(), std::move(out));
}

MarginalSpec MarginalSpec::support_list(std::vector<BitVector> pts) {
  MarginalSpec s;
  s.kind = Kind::SupportList;
  s.points = std::move(pts);
  return s;
}

MarginalSpec MarginalSpec::weight_band(int lo, int hi) {
  MarginalSpec s;
  s.kind = Kind::WeightBand;
  s.lo = lo;
  s.hi = hi;
  return s;
}

MarginalSpec MarginalSpec::heavy_light(double p_heavy, int r, int count_light, int count_heavy,
                                       int light_weight_cap) {
  MarginalSpec s;
  s.kind = Kind::HeavyLightMixture;
  s.p_heavy = p_heavy;
  s.r = r;
  s.count_light = count_light;
  s.count_heavy = count_heavy;
  s.light_weight_cap = light_weight_cap;
  return s;
}

namespace {

// number of points with weight in [lo, hi]; saturates at cap+1
int64_t band_count(int n, int lo, int hi, int64_t cap) {
  long double total = 0.0L;
  for (int w = lo; w <= hi; ++w) {
    long double c = 1.0L;
    for (int i = 0; i < w; ++i) c = c * static_cast<long double>(n - i) / (i + 1);
    total += c;
    if (total > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<int64_t>(total + 0.5L);
}

// combinations of [n] of size w in lexicographic order, appended as points
void enumerate_weight(int n, int w, std::vector<BitVector>& out) {
  std::vector<int> idx(w);
  for (int i = 0; i < w; ++i) idx[i] = i;
  if (w == 0) {
    out.push_back(BitVector(n));
    return;
  }
  if (w > n) return;
  while (true) {
    out.push_back(BitVector::from_indices(n, idx));
    int i = w - 1;
    while (i >= 0 && idx[i] == n - w + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < w; ++j) idx[j] = idx[j - 1] + 1;
  }
}

BitVector random_point_of_weight(int n, int w, Rng& rng) {
  // partial Fisher-Yates over coordinate indices
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  BitVector x(n);
  for (int k = 0; k < w; ++k) {
    const int j = k + static_cast<int>(rng.below(static_cast<uint64_t>(n - k)));
    std::swap(pool[k], pool[j]);
    x.set(pool[k], true);
  }
  return x;
}

std::vector<BitVector> sample_band_points(int n, int lo, int hi, int count, Rng& rng) {
  // weight chosen proportional to the number of points of that weight
  std::vector<long double> cum;
  long double acc = 0.0L;
  for (int w = lo; w <= hi; ++w) {
    long double c = 1.0L;
    for (int i = 0; i < w; ++i) c = c * static_cast<long double>(n - i) / (i + 1);
    acc += c;
    cum.push_back(acc);
  }
  std::vector<BitVector> out;
  std::unordered_set<uint64_t> seen;
  int attempts = 0;
  const int max_attempts = count * 64 + 1024;
  while (static_cast<int>(out.size()) < count && attempts++ < max_attempts) {
    const long double u = static_cast<long double>(rng.uniform01()) * acc;
    int w = lo;
    for (size_t i = 0; i < cum.size(); ++i) {
      if (u <= cum[i]) {
        w = lo + static_cast<int>(i);
        break;
      }
    }
    BitVector x = random_point_of_weight(n, w, rng);
    if (seen.insert(x.hash()).second) out.push_back(std::move(x));
  }
  if (out.empty()) throw std::runtime_error("gen_planted: could not sample band points");
  return out;
}

std::vector<BitVector> marginal_points(int n, const MarginalSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case MarginalSpec::Kind::SupportList: {
      if (spec.points.empty())
        throw std::invalid_argument("gen_planted: empty support list");
      for (const auto& p : spec.points)
        if (p.dimension() != n)
          throw std::invalid_argument("gen_planted: support point dimension mismatch");
      return spec.points;
    }
    case MarginalSpec::Kind::WeightBand: {
      if (spec.lo < 0 || spec.hi > n || spec.lo > spec.hi)
        throw std::invalid_argument("gen_planted: bad weight band");
      if (band_count(n, spec.lo, spec.hi, spec.enumerate_cap) <= spec.enumerate_cap) {
        std::vector<BitVector> pts;
        for (int w = spec.lo; w <= spec.hi; ++w) enumerate_weight(n, w, pts);
        return pts;
      }
      return sample_band_points(n, spec.lo, spec.hi, spec.sample_count, rng);
    }
    case MarginalSpec::Kind::HeavyLightMixture:
      throw std::logic_error("marginal_points: heavy-light handled separately");
  }
  throw std::invalid_argument("gen_planted: unknown marginal kind");
}

}  // namespace

ExplicitDistribution gen_planted(int n, const MonotoneDisjunction& S, const MarginalSpec& spec,
                                 double eta, uint64_t seed) {
  if (S.dimension() != n) throw std::invalid_argument("gen_planted: S dimension mismatch");
  if (eta < 0.0 || eta >= 0.5) throw std::invalid_argument("gen_planted: eta must be in [0, 1/2)");
  Rng rng(Rng::derive(seed, 0x22));

  std::vector<std::pair<BitVector, double>> masses;
  if (spec.kind == MarginalSpec::Kind::HeavyLightMixture) {
    if (spec.p_heavy < 0.0 || spec.p_heavy > 1.0)
      throw std::invalid_argument("gen_planted: p_heavy outside [0, 1]");
    if (spec.r < 0 || spec.r >= n)
      throw std::invalid_argument("gen_planted: mixture threshold outside [0, n)");
    const int light_hi = spec.light_weight_cap >= 0
                             ? std::min(spec.light_weight_cap, spec.r)
                             : spec.r;
    std::vector<BitVector> light, heavy;
    {
      std::unordered_set<uint64_t> seen;
      int attempts = 0;
      while (static_cast<int>(light.size()) < spec.count_light && attempts++ < 64 * spec.count_light + 1024) {
        const int w = static_cast<int>(rng.below(static_cast<uint64_t>(light_hi + 1)));
        BitVector x = random_point_of_weight(n, w, rng);
        if (seen.insert(x.hash()).second) light.push_back(std::move(x));
      }
      attempts = 0;
      while (static_cast<int>(heavy.size()) < spec.count_heavy && attempts++ < 64 * spec.count_heavy + 1024) {
        const int w = spec.r + 1 +
                      static_cast<int>(rng.below(static_cast<uint64_t>(n - spec.r)));
        BitVector x = random_point_of_weight(n, w, rng);
        if (seen.insert(x.hash()).second) heavy.push_back(std::move(x));
      }
    }
    if (light.empty() || (heavy.empty() && spec.p_heavy > 0.0))
      throw std::runtime_error("gen_planted: could not build mixture sides");
    for (const auto& x : light)
      masses.emplace_back(x, (1.0 - spec.p_heavy) / static_cast<double>(light.size()));
    for (const auto& x : heavy)
      masses.emplace_back(x, spec.p_heavy / static_cast<double>(heavy.size()));
  } else {
    std::vector<BitVector> pts = marginal_points(n, spec, rng);
    for (const auto& x : pts)
      masses.emplace_back(x, 1.0 / static_cast<double>(pts.size()));
  }

  std::vector<WeightedExample> support;
  support.reserve(masses.size() * 2);
  for (auto& [x, m] : masses) {
    if (m <= 0.0) continue;
    const int f = S.eval(x);
    if (eta == 0.0) {
      support.push_back({std::move(x), f, m});
    } else {
      support.push_back({x, f, m * (1.0 - eta)});
      support.push_back({std::move(x), 1 - f, m * eta});
    }
  }
  return ExplicitDistribution(n, std::move(support));
}

int64_t vc_sample_size(int d, double eps, double c) {
  if (d <= 0 || eps <= 0.0 || c <= 0.0)
    throw std::invalid_argument("vc_sample_size: arguments must be positive");
  return static_cast<int64_t>(std::ceil(c * static_cast<double>(d) / (eps * eps)));
}

}  // namespace adl
