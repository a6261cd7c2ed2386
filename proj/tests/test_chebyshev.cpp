#include "doctest.h"

#include <cmath>
#include <vector>

#include "adl/chebyshev.hpp"
#include "adl/rng.hpp"

using namespace adl;

TEST_CASE("chebyshev_eval frozen values") {
  CHECK(chebyshev_eval(0, 0.37) == 1.0);
  CHECK(chebyshev_eval(7, 1.0) == 1.0);
  CHECK(chebyshev_eval(1, -0.25) == -0.25);
  // T_3(t) = 4t^3 - 3t at t = 2: 32 - 6
  CHECK(chebyshev_eval(3, 2.0) == doctest::Approx(26.0).epsilon(1e-14));
  // T_4(t) = 8t^4 - 8t^2 + 1 at t = 0.6
  CHECK(chebyshev_eval(4, 0.6) == doctest::Approx(-0.8432).epsilon(1e-13));
  CHECK_THROWS_AS(chebyshev_eval(-1, 0.0), std::invalid_argument);
}

TEST_CASE("chebyshev_eval matches the closed forms") {
  Rng rng(2026);
  for (int trial = 0; trial < 400; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(200));
    const double theta = rng.uniform01() * 3.141592653589793;
    CHECK(std::abs(chebyshev_eval(d, std::cos(theta)) - std::cos(d * theta)) <= 1e-9);
  }
  // t > 1: cosh form, moderate range to stay far from overflow
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(40));
    const double t = 1.0 + rng.uniform01();
    const double want = std::cosh(d * std::acosh(t));
    CHECK(chebyshev_eval(d, t) == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("bounded by 1 on [-1,1] and steep growth beyond 1") {
  Rng rng(7);
  for (int d = 1; d <= 200; ++d) {
    for (int g = 0; g <= 20; ++g) {
      const double t = -1.0 + 0.1 * g;
      CHECK(std::abs(chebyshev_eval(d, t)) <= 1.0 + 1e-9);
    }
    const double t = rng.uniform01() * 2.0 - 1.0;
    CHECK(std::abs(chebyshev_eval(d, t)) <= 1.0 + 1e-9);
    // T_d(1 + delta) >= 1 + d^2 delta on a delta grid in (0, 1]
    for (double delta : {1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0}) {
      CHECK(chebyshev_eval(d, 1.0 + delta) >= 1.0 + d * d * delta - 1e-9);
    }
  }
}

TEST_CASE("monomial form: Horner evaluation and trimming") {
  UnivariatePoly p = UnivariatePoly::monomial({1.0, -2.0, 0.5, 0.0});
  CHECK(p.degree() == 2);
  CHECK(p.kind() == UnivariatePoly::Kind::Monomial);
  CHECK(p.eval(3.0) == doctest::Approx(1.0 - 6.0 + 4.5).epsilon(1e-15));
  CHECK(UnivariatePoly::monomial({}).degree() == 0);
  CHECK(UnivariatePoly::monomial({0.0, 0.0}).eval(5.0) == 0.0);
  CHECK_THROWS_AS(
      UnivariatePoly::cheb_power(3, 9, 2, 0.0, 1.0).coefficients(),
      std::runtime_error);
  CHECK_THROWS_AS(UnivariatePoly::cheb_power(0, 9, 1, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(UnivariatePoly::cheb_power(3, 1, 1, 0.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("build_approx degrees and exact values at zero") {
  CHECK_THROWS_AS(build_approx(0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(build_approx(9, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_approx(9, 0.5), std::invalid_argument);

  // large-eps regime: d = ceil(2 sqrt(r) sqrt(1-2 eps)); at r=25, eps=0.3 -> 7
  CHECK(build_approx(25, 0.3).degree() == 7);
  CHECK(build_approx(9, 0.3).eval(0.0) == 0.3);  // exact, not approximate

  // small-eps regime: degree d*k with d = ceil(2 sqrt(r)), 2^-k <= eps < 2^-(k-1)
  CHECK(build_approx(9, 0.1).degree() == 6 * 4);
  CHECK(build_approx(9, 0.01).degree() == 6 * 7);
  CHECK(build_approx(9, 0.125).degree() == 6 * 3);  // eps hitting 2^-k exactly
  CHECK(build_approx(9, 0.1).eval(0.0) == 0.0);
  CHECK(build_approx(100, 0.01).eval(0.0) == 0.0);

  // r = 1 interpolation special case
  UnivariatePoly a = build_approx(1, 0.3);
  CHECK(a.degree() == 1);
  CHECK(a.eval(0.0) == 0.3);
  CHECK(a.eval(1.0) == 1.0);
  UnivariatePoly b = build_approx(1, 0.1);
  CHECK(b.eval(0.0) == 0.0);
  CHECK(b.eval(1.0) == 1.0);
}

TEST_CASE("certification passes across the acceptance grid") {
  for (int r : {4, 9, 25, 64, 100}) {
    for (double eps : {0.3, 0.25, 0.1, 0.01}) {
      UnivariatePoly q = build_approx(r, eps);
      ApproxReport rep = certify_approx(q, r, eps);
      INFO("r=", r, " eps=", eps, " zero=", rep.max_dev_at_zero,
           " band=", rep.max_dev_on_band);
      CHECK(rep.pass);
      CHECK(rep.max_dev_at_zero <= eps + 1e-9);
      CHECK(rep.max_dev_on_band <= eps + 1e-9);

      const int cap_small = static_cast<int>(std::ceil(2.0 * std::sqrt(r))) *
                            static_cast<int>(std::ceil(std::log2(1.0 / eps)));
      const int cap_large = static_cast<int>(std::ceil(2.0 * std::sqrt(r))) + 1;
      CHECK(q.degree() <= (eps < 0.25 ? cap_small : cap_large));
    }
  }
}

TEST_CASE("certification rejects the constant 1 against the step target") {
  UnivariatePoly one = UnivariatePoly::monomial({1.0});
  ApproxReport step = certify_approx(one, 9, 0.3);
  CHECK_FALSE(step.pass);
  CHECK(step.max_dev_at_zero == 1.0);
  CHECK(step.max_dev_on_band == 0.0);

  ApproxReport flat = certify_approx(one, 9, 0.3, ApproxTarget::ConstOne);
  CHECK(flat.pass);
  CHECK(one.degree() == 0);
}

TEST_CASE("lift applies the base polynomial to the restricted weight") {
  // identity on S={0}
  WeightPoly ident = lift(UnivariatePoly::monomial({0.0, 1.0}),
                          CoordSet::from_indices(2, {0}));
  CHECK(ident.eval(BitVector::from_string("10")) == 1.0);
  CHECK(ident.eval(BitVector::from_string("01")) == 0.0);

  // exhaustive agreement over {0,1}^4
  UnivariatePoly q = build_approx(4, 0.3);
  CoordSet S = CoordSet::all_ones(4);
  WeightPoly wp = lift(q, S);
  for (int mask = 0; mask < 16; ++mask) {
    BitVector x(4);
    for (int i = 0; i < 4; ++i) x.set(i, (mask >> i) & 1);
    CHECK(wp.eval(x) == q.eval(static_cast<double>(x.count())));
  }

  // empty set: constant q(0)
  WeightPoly c = lift(build_approx(9, 0.3), CoordSet(5));
  CHECK(c.eval(BitVector::from_string("11111")) == 0.3);
}
