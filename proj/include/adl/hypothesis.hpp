#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "adl/bits.hpp"
#include "adl/multilinear.hpp"
#include "adl/region.hpp"

namespace adl {

// Boolean hypothesis as a small expression tree.  Evaluation is total and
// returns {0,1}; every constructor is a value (nodes shared, immutable).
class Hypothesis {
public:
  enum class Kind { Constant, Disjunction, ThresholdPoly, RegionSplit, DecisionList, WeightedMajority };

  Hypothesis() : Hypothesis(constant(0)) {}

  static Hypothesis constant(int bit);
  static Hypothesis disjunction(CoordSet support);
  // h(x) = 1 iff p(x) >= threshold.
  static Hypothesis threshold_poly(MultilinearPolynomial p, double threshold);
  static Hypothesis region_split(Region where, Hypothesis inside, Hypothesis outside);
  // First matching region wins; otherwise the default bit.
  static Hypothesis decision_list(std::vector<std::pair<Region, Hypothesis>> entries, int default_bit);
  // 1 iff sum_j w_j (2 h_j(x) - 1) >= 0.
  static Hypothesis weighted_majority(std::vector<std::pair<double, Hypothesis>> terms);

  int eval(const BitVector& x) const;

  Kind kind() const;
  std::string describe() const;

  // Structural accessors (throw on kind mismatch); used by tests and traces.
  int constant_bit() const;
  const CoordSet& disjunction_support() const;
  const MultilinearPolynomial& poly() const;
  double threshold() const;
  const Region& split_region() const;
  const Hypothesis& split_inside() const;
  const Hypothesis& split_outside() const;
  const std::vector<std::pair<Region, Hypothesis>>& list_entries() const;
  int list_default() const;
  const std::vector<std::pair<double, Hypothesis>>& majority_terms() const;

private:
  struct Node;
  explicit Hypothesis(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& node() const;
  std::shared_ptr<const Node> node_;
};

}  // namespace adl
