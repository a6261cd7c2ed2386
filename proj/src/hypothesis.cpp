#include "adl/hypothesis.hpp"

#include <stdexcept>

namespace adl {

struct Hypothesis::Node {
  Kind kind;
  int bit = 0;                                     // Constant, DecisionList default
  CoordSet support;                                // Disjunction
  MultilinearPolynomial p;                         // ThresholdPoly
  double threshold = 0.0;                          // ThresholdPoly
  Region where;                                    // RegionSplit
  std::vector<Hypothesis> children;                // RegionSplit: inside, outside
  std::vector<std::pair<Region, Hypothesis>> entries;      // DecisionList
  std::vector<std::pair<double, Hypothesis>> terms;        // WeightedMajority
};

const Hypothesis::Node& Hypothesis::node() const {
  if (!node_) throw std::runtime_error("Hypothesis: empty node");
  return *node_;
}

Hypothesis Hypothesis::constant(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("Hypothesis: constant bit must be 0/1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->bit = bit;
  return Hypothesis(std::move(n));
}

Hypothesis Hypothesis::disjunction(CoordSet support) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Disjunction;
  n->support = std::move(support);
  return Hypothesis(std::move(n));
}

Hypothesis Hypothesis::threshold_poly(MultilinearPolynomial p, double threshold) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ThresholdPoly;
  n->p = std::move(p);
  n->threshold = threshold;
  return Hypothesis(std::move(n));
}

Hypothesis Hypothesis::region_split(Region where, Hypothesis inside, Hypothesis outside) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::RegionSplit;
  n->where = std::move(where);
  n->children = {std::move(inside), std::move(outside)};
  return Hypothesis(std::move(n));
}

Hypothesis Hypothesis::decision_list(std::vector<std::pair<Region, Hypothesis>> entries,
                                     int default_bit) {
  if (default_bit != 0 && default_bit != 1)
    throw std::invalid_argument("Hypothesis: decision list default must be 0/1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::DecisionList;
  n->entries = std::move(entries);
  n->bit = default_bit;
  return Hypothesis(std::move(n));
}

Hypothesis Hypothesis::weighted_majority(std::vector<std::pair<double, Hypothesis>> terms) {
  if (terms.empty()) throw std::invalid_argument("Hypothesis: empty majority");
  for (const auto& [w, h] : terms) {
    (void)h;
    if (!(w >= 0.0)) throw std::invalid_argument("Hypothesis: majority weights must be >= 0");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::WeightedMajority;
  n->terms = std::move(terms);
  return Hypothesis(std::move(n));
}

int Hypothesis::eval(const BitVector& x) const {
  const Node& nd = node();
  switch (nd.kind) {
    case Kind::Constant:
      return nd.bit;
    case Kind::Disjunction:
      return x.any_and(nd.support) ? 1 : 0;
    case Kind::ThresholdPoly:
      return nd.p.eval(x) >= nd.threshold ? 1 : 0;
    case Kind::RegionSplit:
      return nd.where.contains(x) ? nd.children[0].eval(x) : nd.children[1].eval(x);
    case Kind::DecisionList:
      for (const auto& [r, h] : nd.entries)
        if (r.contains(x)) return h.eval(x);
      return nd.bit;
    case Kind::WeightedMajority: {
      double s = 0.0;
      for (const auto& [w, h] : nd.terms) s += w * (2 * h.eval(x) - 1);
      return s >= 0.0 ? 1 : 0;
    }
  }
  throw std::runtime_error("Hypothesis: corrupt node");
}

Hypothesis::Kind Hypothesis::kind() const { return node().kind; }

std::string Hypothesis::describe() const {
  const Node& nd = node();
  switch (nd.kind) {
    case Kind::Constant:
      return "const" + std::to_string(nd.bit);
    case Kind::Disjunction: {
      std::string s = "or{";
      for (int i : nd.support.indices()) s += std::to_string(i) + ",";
      return s + "}";
    }
    case Kind::ThresholdPoly:
      return "poly_deg" + std::to_string(nd.p.degree()) + ">=" + std::to_string(nd.threshold);
    case Kind::RegionSplit:
      return "split(" + nd.where.describe() + "?" + nd.children[0].describe() + ":" +
             nd.children[1].describe() + ")";
    case Kind::DecisionList: {
      std::string s = "list[";
      for (const auto& [r, h] : nd.entries) s += r.describe() + "->" + h.describe() + ";";
      return s + "else" + std::to_string(nd.bit) + "]";
    }
    case Kind::WeightedMajority: {
      std::string s = "maj(";
      for (const auto& [w, h] : nd.terms) s += std::to_string(w) + "*" + h.describe() + ";";
      return s + ")";
    }
  }
  throw std::runtime_error("Hypothesis: corrupt node");
}

int Hypothesis::constant_bit() const {
  if (kind() != Kind::Constant && kind() != Kind::DecisionList)
    throw std::runtime_error("Hypothesis: not a constant");
  return node().bit;
}
const CoordSet& Hypothesis::disjunction_support() const {
  if (kind() != Kind::Disjunction) throw std::runtime_error("Hypothesis: not a disjunction");
  return node().support;
}
const MultilinearPolynomial& Hypothesis::poly() const {
  if (kind() != Kind::ThresholdPoly) throw std::runtime_error("Hypothesis: not a threshold poly");
  return node().p;
}
double Hypothesis::threshold() const {
  if (kind() != Kind::ThresholdPoly) throw std::runtime_error("Hypothesis: not a threshold poly");
  return node().threshold;
}
const Region& Hypothesis::split_region() const {
  if (kind() != Kind::RegionSplit) throw std::runtime_error("Hypothesis: not a region split");
  return node().where;
}
const Hypothesis& Hypothesis::split_inside() const {
  if (kind() != Kind::RegionSplit) throw std::runtime_error("Hypothesis: not a region split");
  return node().children[0];
}
const Hypothesis& Hypothesis::split_outside() const {
  if (kind() != Kind::RegionSplit) throw std::runtime_error("Hypothesis: not a region split");
  return node().children[1];
}
const std::vector<std::pair<Region, Hypothesis>>& Hypothesis::list_entries() const {
  if (kind() != Kind::DecisionList) throw std::runtime_error("Hypothesis: not a decision list");
  return node().entries;
}
int Hypothesis::list_default() const {
  if (kind() != Kind::DecisionList) throw std::runtime_error("Hypothesis: not a decision list");
  return node().bit;
}
const std::vector<std::pair<double, Hypothesis>>& Hypothesis::majority_terms() const {
  if (kind() != Kind::WeightedMajority) throw std::runtime_error("Hypothesis: not a majority");
  return node().terms;
}

}  // namespace adl
