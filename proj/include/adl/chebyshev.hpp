#pragma once

#include <vector>

#include "adl/bits.hpp"

namespace adl {

// T_d(t) by the three-term recurrence; valid on all of R.
double chebyshev_eval(int d, double t);

// Univariate polynomial in one of two evaluation forms.
//
// Monomial: plain coefficient vector, evaluated by Horner.  ChebPower:
//   q(t) = zero_value + band_gain * (1 - (T_d(u(t)) / T_d(u(0)))^k),
// u(t) = (r - t)/(r - 1).  The powered Chebyshev construction expanded to
// monomials loses all precision already at moderate degree (the terms grow
// like 4^degree and cancel), so the structured form is kept and evaluated
// directly; u(0) reproduces the stored normalizer bit for bit, making
// q(0) = zero_value exact.
class UnivariatePoly {
public:
  enum class Kind { Monomial, ChebPower };

  static UnivariatePoly monomial(std::vector<double> coeffs);
  static UnivariatePoly cheb_power(int d, int r, int k, double zero_value,
                                   double band_gain);

  Kind kind() const { return kind_; }
  int degree() const { return degree_; }
  double eval(double t) const;

  // Monomial form only.
  const std::vector<double>& coefficients() const;

private:
  UnivariatePoly() = default;

  Kind kind_ = Kind::Monomial;
  int degree_ = 0;
  std::vector<double> coeffs_;
  int cheb_d_ = 0;
  int cheb_r_ = 0;
  int power_ = 1;
  double zero_value_ = 0.0;
  double band_gain_ = 1.0;
  double normalizer_ = 1.0;  // T_d(r/(r-1))
};

// One-sided approximator for weights 0..r: q(0) near the small target,
// q(w) within eps of 1 for integer w in [1, r].  Two regimes split at
// eps = 1/4; r = 1 degenerates to two-point interpolation.
UnivariatePoly build_approx(int r, double eps);

enum class ApproxTarget {
  OneSidedStep,  // 0 at w = 0, 1 on 1..r
  ConstOne,      // 1 everywhere on 0..r
};

struct ApproxReport {
  double max_dev_at_zero = 0.0;
  double max_dev_on_band = 0.0;
  bool pass = false;
};

// Evaluates q on every integer 0..r and compares against the target.
// This check, not the construction formulas, is the accuracy authority.
ApproxReport certify_approx(const UnivariatePoly& q, int r, double eps,
                            ApproxTarget target = ApproxTarget::OneSidedStep);

// x maps to base(W_S(x)).
struct WeightPoly {
  UnivariatePoly base;
  CoordSet coords;

  double eval(const BitVector& x) const {
    return base.eval(static_cast<double>(x.count_and(coords)));
  }
};

WeightPoly lift(UnivariatePoly q, CoordSet coords);

}  // namespace adl
