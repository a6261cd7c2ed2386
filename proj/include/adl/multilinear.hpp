#pragma once

#include <vector>

#include "adl/bits.hpp"

namespace adl {

struct MultilinearTerm {
  CoordSet vars;
  double coeff;
};

// Polynomial over {0,1}^n in the monomial basis prod_{i in A} x_i.
// Terms are kept sorted by (|A|, sequence-lex) and merged; on Boolean
// points this basis is exact, so no degree reduction is ever needed.
class MultilinearPolynomial {
public:
  MultilinearPolynomial() = default;
  MultilinearPolynomial(int n, std::vector<MultilinearTerm> terms);

  double eval(const BitVector& x) const;

  int dimension() const { return n_; }
  int degree() const;
  const std::vector<MultilinearTerm>& terms() const { return terms_; }

  static MultilinearPolynomial constant(int n, double c);

private:
  int n_ = 0;
  std::vector<MultilinearTerm> terms_;
};

}  // namespace adl
