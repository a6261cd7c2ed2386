#include "adl/multilinear.hpp"

#include <algorithm>
#include <stdexcept>

namespace adl {

MultilinearPolynomial::MultilinearPolynomial(int n, std::vector<MultilinearTerm> terms)
    : n_(n), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.vars.dimension() != n_)
      throw std::invalid_argument("MultilinearPolynomial: term dimension mismatch");
  }
  std::sort(terms_.begin(), terms_.end(), [](const MultilinearTerm& a, const MultilinearTerm& b) {
    const int ca = a.vars.count(), cb = b.vars.count();
    if (ca != cb) return ca < cb;
    return CoordSet::lex_less(a.vars, b.vars);
  });
  // merge duplicates, drop exact zeros
  std::vector<MultilinearTerm> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().vars == t.vars)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const MultilinearTerm& t) { return t.coeff == 0.0; });
  terms_ = std::move(merged);
}

double MultilinearPolynomial::eval(const BitVector& x) const {
  if (x.dimension() != n_)
    throw std::invalid_argument("MultilinearPolynomial: eval dimension mismatch");
  double v = 0.0;
  for (const auto& t : terms_)
    if (t.vars.is_subset_of(x)) v += t.coeff;
  return v;
}

int MultilinearPolynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.vars.count());
  return d;
}

MultilinearPolynomial MultilinearPolynomial::constant(int n, double c) {
  if (c == 0.0) return MultilinearPolynomial(n, {});
  return MultilinearPolynomial(n, {{CoordSet(n), c}});
}

}  // namespace adl
