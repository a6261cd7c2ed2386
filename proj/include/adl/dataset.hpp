#pragma once

#include <string>
#include <vector>

#include "adl/bits.hpp"
#include "adl/hypothesis.hpp"

namespace adl {

struct LabeledExample {
  BitVector x;
  int y;
};

struct WeightedExample {
  BitVector x;
  int y;
  double p;
};

// Finite labeled distribution given explicitly.  Invariants enforced at
// construction: consistent dimension, labels in {0,1}, probabilities
// nonnegative and summing to 1 within 1e-9, (x, y) pairs unique.
class ExplicitDistribution {
public:
  ExplicitDistribution(int n, std::vector<WeightedExample> support);

  int dimension() const { return n_; }
  const std::vector<WeightedExample>& support() const { return support_; }

private:
  int n_;
  std::vector<WeightedExample> support_;
};

// Multiset of labeled draws; weights are implicitly uniform.
class EmpiricalSample {
public:
  EmpiricalSample(int n, std::vector<LabeledExample> examples);

  int dimension() const { return n_; }
  const std::vector<LabeledExample>& examples() const { return examples_; }
  size_t size() const { return examples_.size(); }

private:
  int n_;
  std::vector<LabeledExample> examples_;
};

// Zero-one error Pr[h(x) != y]; throws on empty data or dimension mismatch.
double hypothesis_error(const Hypothesis& h, const ExplicitDistribution& d);
double hypothesis_error(const Hypothesis& h, const EmpiricalSample& s);

double disjunction_error(const CoordSet& support, const ExplicitDistribution& d);
double disjunction_error(const CoordSet& support, const EmpiricalSample& s);

// ---- file format -------------------------------------------------------
// First line: "n=<dim>".  Then one record per line: "<bitstring> <label>"
// for samples, with a third "<prob>" column for explicit distributions.
// Leftmost bitstring character is coordinate 0.
void save_distribution(const ExplicitDistribution& d, const std::string& path);
void save_sample(const EmpiricalSample& s, const std::string& path);
ExplicitDistribution load_distribution(const std::string& path);
EmpiricalSample load_sample(const std::string& path);

// ---- general disjunctions and the monotonization reduction -------------
// f(x) = 1 iff some positive literal or some negated literal fires.
struct GeneralDisjunction {
  CoordSet pos;
  CoordSet neg;

  int eval(const BitVector& x) const {
    return (x.any_and(pos) || !neg.is_subset_of(x)) ? 1 : 0;
  }
};

double general_disjunction_error(const GeneralDisjunction& f, const ExplicitDistribution& d);

// x maps to (x, complement of x) over 2n coordinates; general disjunctions
// over n coordinates become monotone ones over 2n with identical
// predictions on every example.
BitVector monotonize_point(const BitVector& x);
ExplicitDistribution monotonize_instance(const ExplicitDistribution& d);
EmpiricalSample monotonize_instance(const EmpiricalSample& s);
MonotoneDisjunction monotone_image(const GeneralDisjunction& f);

}  // namespace adl
