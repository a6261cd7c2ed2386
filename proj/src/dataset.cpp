#include "adl/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace adl {

namespace {

constexpr double kMassSlack = 1e-9;

struct PairHash {
  size_t operator()(const std::pair<uint64_t, int>& p) const {
    return p.first * 31 + static_cast<size_t>(p.second);
  }
};

}  // namespace

ExplicitDistribution::ExplicitDistribution(int n, std::vector<WeightedExample> support)
    : n_(n), support_(std::move(support)) {
  if (n_ < 0) throw std::invalid_argument("ExplicitDistribution: negative dimension");
  if (support_.empty()) throw std::invalid_argument("ExplicitDistribution: empty support");
  double total = 0.0;
  std::unordered_set<std::pair<uint64_t, int>, PairHash> seen;
  for (const auto& e : support_) {
    if (e.x.dimension() != n_)
      throw std::invalid_argument("ExplicitDistribution: example dimension mismatch");
    if (e.y != 0 && e.y != 1)
      throw std::invalid_argument("ExplicitDistribution: label must be 0/1");
    if (!(e.p >= 0.0))
      throw std::invalid_argument("ExplicitDistribution: negative probability");
    if (!seen.insert({e.x.hash(), e.y}).second) {
      // hash collision is possible in principle; confirm with a scan
      int dup = 0;
      for (const auto& f : support_)
        if (f.y == e.y && f.x == e.x) ++dup;
      if (dup > 1)
        throw std::invalid_argument("ExplicitDistribution: duplicate (x, y) record");
    }
    total += e.p;
  }
  if (std::fabs(total - 1.0) > kMassSlack)
    throw std::invalid_argument("ExplicitDistribution: probabilities sum to " +
                                std::to_string(total) + ", not 1");
}

EmpiricalSample::EmpiricalSample(int n, std::vector<LabeledExample> examples)
    : n_(n), examples_(std::move(examples)) {
  if (n_ < 0) throw std::invalid_argument("EmpiricalSample: negative dimension");
  if (examples_.empty()) throw std::invalid_argument("EmpiricalSample: empty sample");
  for (const auto& e : examples_) {
    if (e.x.dimension() != n_)
      throw std::invalid_argument("EmpiricalSample: example dimension mismatch");
    if (e.y != 0 && e.y != 1)
      throw std::invalid_argument("EmpiricalSample: label must be 0/1");
  }
}

double hypothesis_error(const Hypothesis& h, const ExplicitDistribution& d) {
  double err = 0.0;
  for (const auto& e : d.support())
    if (h.eval(e.x) != e.y) err += e.p;
  return err;
}

double hypothesis_error(const Hypothesis& h, const EmpiricalSample& s) {
  size_t wrong = 0;
  for (const auto& e : s.examples())
    if (h.eval(e.x) != e.y) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(s.size());
}

double disjunction_error(const CoordSet& support, const ExplicitDistribution& d) {
  double err = 0.0;
  for (const auto& e : d.support()) {
    const int fx = e.x.any_and(support) ? 1 : 0;
    if (fx != e.y) err += e.p;
  }
  return err;
}

double disjunction_error(const CoordSet& support, const EmpiricalSample& s) {
  size_t wrong = 0;
  for (const auto& e : s.examples()) {
    const int fx = e.x.any_and(support) ? 1 : 0;
    if (fx != e.y) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(s.size());
}

void save_distribution(const ExplicitDistribution& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_distribution: cannot open " + path);
  out << "n=" << d.dimension() << "\n";
  char buf[64];
  for (const auto& e : d.support()) {
    std::snprintf(buf, sizeof(buf), "%.17g", e.p);
    out << e.x.to_string() << " " << e.y << " " << buf << "\n";
  }
  if (!out) throw std::runtime_error("save_distribution: write failed for " + path);
}

void save_sample(const EmpiricalSample& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_sample: cannot open " + path);
  out << "n=" << s.dimension() << "\n";
  for (const auto& e : s.examples()) out << e.x.to_string() << " " << e.y << "\n";
  if (!out) throw std::runtime_error("save_sample: write failed for " + path);
}

namespace {

struct ParsedFile {
  int n = 0;
  int columns = 0;
  std::vector<WeightedExample> weighted;
  std::vector<LabeledExample> labeled;
};

ParsedFile parse_example_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("n=", 0) != 0)
    throw std::runtime_error("load: missing n=<dim> header in " + path);
  ParsedFile pf;
  pf.n = std::stoi(line.substr(2));
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string bits;
    int y;
    if (!(ss >> bits >> y))
      throw std::runtime_error("load: bad record at line " + std::to_string(lineno));
    double p;
    const bool has_p = static_cast<bool>(ss >> p);
    std::string trailing;
    if (ss >> trailing)
      throw std::runtime_error("load: trailing tokens at line " + std::to_string(lineno));
    const int cols = has_p ? 3 : 2;
    if (pf.columns == 0) pf.columns = cols;
    if (pf.columns != cols)
      throw std::runtime_error("load: mixed column counts at line " + std::to_string(lineno));
    BitVector x = BitVector::from_string(bits);
    if (x.dimension() != pf.n)
      throw std::runtime_error("load: bitstring length mismatch at line " + std::to_string(lineno));
    if (has_p)
      pf.weighted.push_back({std::move(x), y, p});
    else
      pf.labeled.push_back({std::move(x), y});
  }
  if (pf.columns == 0) throw std::runtime_error("load: no records in " + path);
  return pf;
}

}  // namespace

ExplicitDistribution load_distribution(const std::string& path) {
  ParsedFile pf = parse_example_file(path);
  if (pf.columns != 3)
    throw std::runtime_error("load_distribution: file has no probability column: " + path);
  return ExplicitDistribution(pf.n, std::move(pf.weighted));
}

EmpiricalSample load_sample(const std::string& path) {
  ParsedFile pf = parse_example_file(path);
  if (pf.columns != 2)
    throw std::runtime_error("load_sample: file has a probability column: " + path);
  return EmpiricalSample(pf.n, std::move(pf.labeled));
}

double general_disjunction_error(const GeneralDisjunction& f, const ExplicitDistribution& d) {
  double err = 0.0;
  for (const auto& e : d.support())
    if (f.eval(e.x) != e.y) err += e.p;
  return err;
}

BitVector monotonize_point(const BitVector& x) {
  const int n = x.dimension();
  BitVector z(2 * n);
  for (int i = 0; i < n; ++i) {
    const bool b = x.get(i);
    z.set(i, b);
    z.set(n + i, !b);
  }
  return z;
}

ExplicitDistribution monotonize_instance(const ExplicitDistribution& d) {
  std::vector<WeightedExample> out;
  out.reserve(d.support().size());
  for (const auto& e : d.support()) out.push_back({monotonize_point(e.x), e.y, e.p});
  return ExplicitDistribution(2 * d.dimension(), std::move(out));
}

EmpiricalSample monotonize_instance(const EmpiricalSample& s) {
  std::vector<LabeledExample> out;
  out.reserve(s.size());
  for (const auto& e : s.examples()) out.push_back({monotonize_point(e.x), e.y});
  return EmpiricalSample(2 * s.dimension(), std::move(out));
}

MonotoneDisjunction monotone_image(const GeneralDisjunction& f) {
  const int n = f.pos.dimension();
  if (f.neg.dimension() != n)
    throw std::invalid_argument("monotone_image: literal mask dimension mismatch");
  CoordSet s(2 * n);
  for (int i : f.pos.indices()) s.set(i, true);
  for (int i : f.neg.indices()) s.set(n + i, true);
  return MonotoneDisjunction{s};
}

}  // namespace adl
