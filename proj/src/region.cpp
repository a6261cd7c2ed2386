#include "adl/region.hpp"

#include <stdexcept>

namespace adl {

struct Region::Node {
  Kind kind;
  int index = -1;       // CoordinateOne
  CoordSet coords;      // weight nodes
  int theta = 0;        // weight nodes
  std::vector<Region> parts;  // Intersection
  Region inner;               // Complement
};

Region Region::coordinate_one(int i) {
  if (i < 0) throw std::invalid_argument("Region: negative coordinate");
  auto n = std::make_shared<Node>();
  n->kind = Kind::CoordinateOne;
  n->index = i;
  return Region(std::move(n));
}

Region Region::weight_at_most(CoordSet coords, int theta) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::WeightAtMost;
  n->coords = std::move(coords);
  n->theta = theta;
  return Region(std::move(n));
}

Region Region::weight_more_than(CoordSet coords, int theta) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::WeightMoreThan;
  n->coords = std::move(coords);
  n->theta = theta;
  return Region(std::move(n));
}

Region Region::intersect(std::vector<Region> parts) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Intersection;
  n->parts = std::move(parts);
  return Region(std::move(n));
}

Region Region::complement(Region r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Complement;
  n->inner = std::move(r);
  return Region(std::move(n));
}

bool Region::contains(const BitVector& x) const {
  if (!node_) return true;
  switch (node_->kind) {
    case Kind::All:
      return true;
    case Kind::CoordinateOne:
      return x.get(node_->index);
    case Kind::WeightAtMost:
      return x.count_and(node_->coords) <= node_->theta;
    case Kind::WeightMoreThan:
      return x.count_and(node_->coords) > node_->theta;
    case Kind::Intersection:
      for (const Region& r : node_->parts)
        if (!r.contains(x)) return false;
      return true;
    case Kind::Complement:
      return !node_->inner.contains(x);
  }
  throw std::runtime_error("Region: corrupt node");
}

Region::Kind Region::kind() const {
  return node_ ? node_->kind : Kind::All;
}

std::string Region::describe() const {
  if (!node_) return "all";
  switch (node_->kind) {
    case Kind::All:
      return "all";
    case Kind::CoordinateOne:
      return "x" + std::to_string(node_->index) + "=1";
    case Kind::WeightAtMost: {
      std::string s = "W{";
      for (int i : node_->coords.indices()) s += std::to_string(i) + ",";
      return s + "}<=" + std::to_string(node_->theta);
    }
    case Kind::WeightMoreThan: {
      std::string s = "W{";
      for (int i : node_->coords.indices()) s += std::to_string(i) + ",";
      return s + "}>" + std::to_string(node_->theta);
    }
    case Kind::Intersection: {
      std::string s = "and(";
      for (const Region& r : node_->parts) s += r.describe() + ";";
      return s + ")";
    }
    case Kind::Complement:
      return "not(" + node_->inner.describe() + ")";
  }
  throw std::runtime_error("Region: corrupt node");
}

}  // namespace adl
