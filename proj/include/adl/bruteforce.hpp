#pragma once

#include <cstdint>
#include <vector>

#include "adl/dataset.hpp"
#include "adl/hypothesis.hpp"

namespace adl {

enum class ConceptClass { Monotone, MonotoneConst1, GeneralLiterals };

struct OptResult {
  double opt = 1.0;
  ConceptClass cls = ConceptClass::Monotone;
  bool is_const1 = false;        // MonotoneConst1 argmin is the constant 1
  CoordSet support;              // monotone argmin support
  GeneralDisjunction literals;   // GeneralLiterals argmin
  int64_t count_enumerated = 0;
};

// Exact minimum error over the whole concept class by enumeration, with
// the lexicographically-smallest minimizer: supports compare in sequence
// order, general patterns by positive then negative set, and the constant
// 1 wins only when strictly better than every disjunction.  Candidate
// counts above the cap (2^n monotone, 3^n general) are refused.
//
// opt_enumerate shards the candidate range across OpenMP threads and
// reduces shard winners in fixed order, so its result is identical to the
// serial reference for any thread count.
OptResult opt_enumerate(const ExplicitDistribution& data, ConceptClass cls,
                        int64_t cap = 10000000, int jobs = 0);
OptResult opt_enumerate(const EmpiricalSample& data, ConceptClass cls,
                        int64_t cap = 10000000, int jobs = 0);
OptResult opt_enumerate_serial(const ExplicitDistribution& data, ConceptClass cls,
                               int64_t cap = 10000000);
OptResult opt_enumerate_serial(const EmpiricalSample& data, ConceptClass cls,
                               int64_t cap = 10000000);

// Independent full-summation error oracle; deliberately separate from
// hypothesis_error so derived numbers are cross-checked by distinct code.
double exhaustive_hypothesis_error(const Hypothesis& h, const ExplicitDistribution& d);

}  // namespace adl
