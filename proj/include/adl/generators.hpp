#pragma once

#include <cstdint>
#include <vector>

#include "adl/dataset.hpp"
#include "adl/region.hpp"

namespace adl {

// I.i.d. draws from an explicit distribution; deterministic given the seed.
EmpiricalSample draw(const ExplicitDistribution& d, int64_t count, uint64_t seed);

// Restriction D | region, renormalized.  Throws if the region mass is zero.
ExplicitDistribution condition_on(const ExplicitDistribution& d, const Region& region);
double region_mass(const ExplicitDistribution& d, const Region& region);

// Marginal over points for gen_planted.
struct MarginalSpec {
  enum class Kind { SupportList, WeightBand, HeavyLightMixture };
  Kind kind = Kind::WeightBand;

  // SupportList: uniform over the given points.
  std::vector<BitVector> points;

  // WeightBand: uniform over { x : lo <= W(x) <= hi }.  Enumerates when the
  // band holds at most enumerate_cap points, else samples sample_count
  // distinct points (uniform over the band).
  int lo = 0;
  int hi = 0;
  int64_t enumerate_cap = 1000000;
  int sample_count = 256;

  static MarginalSpec support_list(std::vector<BitVector> pts);
  static MarginalSpec weight_band(int lo, int hi);

  // HeavyLightMixture: mass p_heavy on points with W(x) > r, the rest on
  // points with W(x) <= r.  count_* distinct points per side, uniform mass
  // within a side; light weights additionally capped by light_weight_cap
  // when nonnegative.
  double p_heavy = 0.0;
  int r = 0;
  int count_light = 32;
  int count_heavy = 8;
  int light_weight_cap = -1;

  static MarginalSpec heavy_light(double p_heavy, int r, int count_light = 32,
                                  int count_heavy = 8, int light_weight_cap = -1);
};

// Labeled instance with planted concept S: marginal per the spec, label
// f_S(x) flipped with probability eta, folded analytically into the
// explicit probabilities (so hypothesis_error(f_S) == eta exactly).
ExplicitDistribution gen_planted(int n, const MonotoneDisjunction& S, const MarginalSpec& spec,
                                 double eta, uint64_t seed);

// ceil(c * d / eps^2): sample size making empirical errors of a VC-d class
// uniformly accurate to eps with the default constant.
int64_t vc_sample_size(int d, double eps, double c = 64.0);

}  // namespace adl
