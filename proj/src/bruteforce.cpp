#include "adl/bruteforce.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "adl/parallel.hpp"

namespace adl {

namespace {

struct MaskPoint {
  uint64_t x = 0;
  int y = 0;
  double p = 0.0;
};

struct MaskData {
  int n = 0;
  double const1_error = 0.0;  // mass with label 0
  std::vector<MaskPoint> pts;
};

MaskData to_masks(int n, const std::vector<WeightedExample>& support) {
  if (n > 63) throw std::invalid_argument("opt_enumerate: dimension above 63");
  MaskData md;
  md.n = n;
  md.pts.reserve(support.size());
  for (const auto& e : support) {
    uint64_t m = 0;
    for (int i = 0; i < n; ++i)
      if (e.x.get(i)) m |= uint64_t{1} << i;
    md.pts.push_back({m, e.y, e.p});
    if (e.y == 0) md.const1_error += e.p;
  }
  return md;
}

MaskData to_masks(const ExplicitDistribution& d) { return to_masks(d.dimension(), d.support()); }

MaskData to_masks(const EmpiricalSample& s) {
  if (s.size() == 0) throw std::invalid_argument("opt_enumerate: empty sample");
  std::vector<WeightedExample> w;
  w.reserve(s.size());
  const double unit = 1.0 / static_cast<double>(s.size());
  for (const auto& e : s.examples()) w.push_back({e.x, e.y, unit});
  return to_masks(s.dimension(), w);
}

double monotone_error(const MaskData& md, uint64_t s) {
  double err = 0.0;
  for (const auto& e : md.pts) {
    const int pred = (e.x & s) ? 1 : 0;
    if (pred != e.y) err += e.p;
  }
  return err;
}

double general_error(const MaskData& md, uint64_t pos, uint64_t neg) {
  double err = 0.0;
  const uint64_t full = md.n == 0 ? 0 : (~uint64_t{0} >> (64 - md.n));
  for (const auto& e : md.pts) {
    const int pred = ((e.x & pos) || (neg & full & ~e.x)) ? 1 : 0;
    if (pred != e.y) err += e.p;
  }
  return err;
}

CoordSet mask_to_set(int n, uint64_t m) {
  std::vector<int> idx;
  for (int i = 0; i < n; ++i)
    if ((m >> i) & 1) idx.push_back(i);
  return CoordSet::from_indices(n, idx);
}

struct Best {
  bool valid = false;
  double err = 2.0;
  uint64_t key1 = 0;  // support or positive set
  uint64_t key2 = 0;  // negative set (general class)
};

bool better(const Best& a, const Best& b, int n) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.err != b.err) return a.err < b.err;
  const CoordSet a1 = mask_to_set(n, a.key1), b1 = mask_to_set(n, b.key1);
  if (!(a1 == b1)) return CoordSet::lex_less(a1, b1);
  return CoordSet::lex_less(mask_to_set(n, a.key2), mask_to_set(n, b.key2));
}

void consider(Best& best, int n, double err, uint64_t k1, uint64_t k2) {
  Best cand{true, err, k1, k2};
  if (better(cand, best, n)) best = cand;
}

// Walks one shard of the candidate space.  Monotone classes index subsets
// directly; the general class walks (pos, neg mask within the complement)
// pairs in a fixed global order.
Best scan_monotone(const MaskData& md, uint64_t from, uint64_t to) {
  Best best;
  for (uint64_t s = from; s < to; ++s)
    consider(best, md.n, monotone_error(md, s), s, 0);
  return best;
}

Best scan_general(const MaskData& md, uint64_t from, uint64_t to) {
  Best best;
  for (uint64_t pos = from; pos < to; ++pos) {
    const uint64_t full = md.n == 0 ? 0 : (~uint64_t{0} >> (64 - md.n));
    const uint64_t comp = full & ~pos;
    uint64_t neg = 0;
    while (true) {
      consider(best, md.n, general_error(md, pos, neg), pos, neg);
      if (neg == comp) break;
      neg = (neg - comp) & comp;  // next subset of comp
    }
  }
  return best;
}

OptResult finish(const MaskData& md, ConceptClass cls, const Best& best,
                 int64_t enumerated) {
  OptResult out;
  out.cls = cls;
  out.count_enumerated = enumerated;
  out.opt = best.err;
  if (cls == ConceptClass::GeneralLiterals) {
    out.literals = {mask_to_set(md.n, best.key1), mask_to_set(md.n, best.key2)};
    out.support = out.literals.pos;
  } else {
    out.support = mask_to_set(md.n, best.key1);
  }
  if (cls == ConceptClass::MonotoneConst1 && md.const1_error < best.err) {
    out.opt = md.const1_error;
    out.is_const1 = true;
    out.count_enumerated += 1;
  } else if (cls == ConceptClass::MonotoneConst1) {
    out.count_enumerated += 1;
  }
  return out;
}

OptResult run(const MaskData& md, ConceptClass cls, int64_t cap, int jobs,
              bool parallel) {
  const int n = md.n;
  const double class_size = cls == ConceptClass::GeneralLiterals
                                ? std::pow(3.0, n)
                                : std::ldexp(1.0, n);
  if (class_size > static_cast<double>(cap))
    throw std::invalid_argument("opt_enumerate: concept class above the cap");

  const uint64_t subsets = uint64_t{1} << n;
  Best best;
  int64_t enumerated = cls == ConceptClass::GeneralLiterals
                           ? static_cast<int64_t>(std::pow(3.0, n) + 0.5)
                           : static_cast<int64_t>(subsets);

  auto scan = [&](uint64_t from, uint64_t to) {
    return cls == ConceptClass::GeneralLiterals ? scan_general(md, from, to)
                                                : scan_monotone(md, from, to);
  };

  if (!parallel) {
    best = scan(0, subsets);
    return finish(md, cls, best, enumerated);
  }

  const int threads = resolve_jobs(jobs);
  const uint64_t shards = std::min<uint64_t>(subsets, std::max(1, threads * 8));
  std::vector<Best> partial(shards);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
  for (int64_t sh = 0; sh < static_cast<int64_t>(shards); ++sh) {
    const uint64_t from = subsets * sh / shards;
    const uint64_t to = subsets * (sh + 1) / shards;
    partial[sh] = scan(from, to);
  }
  for (const auto& b : partial)
    if (better(b, best, n)) best = b;
  return finish(md, cls, best, enumerated);
}

}  // namespace

OptResult opt_enumerate(const ExplicitDistribution& data, ConceptClass cls,
                        int64_t cap, int jobs) {
  return run(to_masks(data), cls, cap, jobs, true);
}

OptResult opt_enumerate(const EmpiricalSample& data, ConceptClass cls, int64_t cap,
                        int jobs) {
  return run(to_masks(data), cls, cap, jobs, true);
}

OptResult opt_enumerate_serial(const ExplicitDistribution& data, ConceptClass cls,
                               int64_t cap) {
  return run(to_masks(data), cls, cap, 1, false);
}

OptResult opt_enumerate_serial(const EmpiricalSample& data, ConceptClass cls,
                               int64_t cap) {
  return run(to_masks(data), cls, cap, 1, false);
}

double exhaustive_hypothesis_error(const Hypothesis& h, const ExplicitDistribution& d) {
  double err = 0.0;
  for (const auto& e : d.support())
    if (h.eval(e.x) != e.y) err += e.p;
  return err;
}

}  // namespace adl
