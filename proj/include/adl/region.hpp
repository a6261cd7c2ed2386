#pragma once

#include <memory>
#include <string>
#include <vector>

#include "adl/bits.hpp"

namespace adl {

// Measurable subset of {0,1}^n built from coordinate tests, weight
// thresholds, intersections and complements.  Immutable; copies share
// nodes, so carving chains (U_{t+1} = U_t minus B_t) stay cheap.
class Region {
public:
  enum class Kind { All, CoordinateOne, WeightAtMost, WeightMoreThan, Intersection, Complement };

  Region() = default;  // full space

  static Region all() { return Region(); }
  static Region coordinate_one(int i);
  static Region weight_at_most(CoordSet coords, int theta);
  static Region weight_more_than(CoordSet coords, int theta);
  static Region intersect(std::vector<Region> parts);
  static Region complement(Region r);

  // U minus B as a region (intersection with the complement).
  static Region minus(const Region& u, const Region& b) {
    return intersect({u, complement(b)});
  }

  bool contains(const BitVector& x) const;

  Kind kind() const;
  // Stable textual form; doubles as the query-descriptor fragment.
  std::string describe() const;

private:
  struct Node;
  explicit Region(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;  // nullptr encodes the full space
};

}  // namespace adl
