#include "adl/chebyshev.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace adl {

double chebyshev_eval(int d, double t) {
  if (d < 0) throw std::invalid_argument("chebyshev_eval: negative degree");
  if (d == 0) return 1.0;
  double prev = 1.0, cur = t;
  for (int j = 1; j < d; ++j) {
    const double next = 2.0 * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

UnivariatePoly UnivariatePoly::monomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  UnivariatePoly p;
  p.kind_ = Kind::Monomial;
  p.degree_ = static_cast<int>(coeffs.size()) - 1;
  p.coeffs_ = std::move(coeffs);
  return p;
}

UnivariatePoly UnivariatePoly::cheb_power(int d, int r, int k, double zero_value,
                                          double band_gain) {
  if (d < 1 || r < 2 || k < 1)
    throw std::invalid_argument("cheb_power: need d >= 1, r >= 2, k >= 1");
  UnivariatePoly p;
  p.kind_ = Kind::ChebPower;
  p.degree_ = d * k;
  p.cheb_d_ = d;
  p.cheb_r_ = r;
  p.power_ = k;
  p.zero_value_ = zero_value;
  p.band_gain_ = band_gain;
  p.normalizer_ =
      chebyshev_eval(d, static_cast<double>(r) / (static_cast<double>(r) - 1.0));
  return p;
}

double UnivariatePoly::eval(double t) const {
  if (kind_ == Kind::Monomial) {
    double acc = 0.0;
    for (size_t j = coeffs_.size(); j-- > 0;) acc = acc * t + coeffs_[j];
    return acc;
  }
  const double u = (static_cast<double>(cheb_r_) - t) /
                   (static_cast<double>(cheb_r_) - 1.0);
  const double ratio = chebyshev_eval(cheb_d_, u) / normalizer_;
  return zero_value_ + band_gain_ * (1.0 - std::pow(ratio, power_));
}

const std::vector<double>& UnivariatePoly::coefficients() const {
  if (kind_ != Kind::Monomial)
    throw std::runtime_error("coefficients: not in monomial form");
  return coeffs_;
}

UnivariatePoly build_approx(int r, double eps) {
  if (r < 1) throw std::invalid_argument("build_approx: r must be >= 1");
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("build_approx: eps must lie in (0, 1/2)");

  if (eps >= 0.25) {
    if (r == 1) return UnivariatePoly::monomial({eps, 1.0 - eps});
    const int d = static_cast<int>(
        std::ceil(2.0 * std::sqrt(static_cast<double>(r)) * std::sqrt(1.0 - 2.0 * eps)));
    return UnivariatePoly::cheb_power(d, r, 1, eps, 1.0 - eps);
  }

  if (r == 1) return UnivariatePoly::monomial({0.0, 1.0});
  const int d =
      static_cast<int>(std::ceil(2.0 * std::sqrt(static_cast<double>(r))));
  int k = 1;
  while (std::ldexp(1.0, -k) > eps) ++k;
  return UnivariatePoly::cheb_power(d, r, k, 0.0, 1.0);
}

ApproxReport certify_approx(const UnivariatePoly& q, int r, double eps,
                            ApproxTarget target) {
  if (r < 0) throw std::invalid_argument("certify_approx: r must be >= 0");
  const double zero_target = target == ApproxTarget::ConstOne ? 1.0 : 0.0;
  ApproxReport rep;
  rep.max_dev_at_zero = std::abs(q.eval(0.0) - zero_target);
  for (int w = 1; w <= r; ++w) {
    const double dev = std::abs(q.eval(static_cast<double>(w)) - 1.0);
    if (dev > rep.max_dev_on_band) rep.max_dev_on_band = dev;
  }
  constexpr double kSlack = 1e-9;
  rep.pass = rep.max_dev_at_zero <= eps + kSlack && rep.max_dev_on_band <= eps + kSlack;
  return rep;
}

WeightPoly lift(UnivariatePoly q, CoordSet coords) {
  return WeightPoly{std::move(q), std::move(coords)};
}

}  // namespace adl
