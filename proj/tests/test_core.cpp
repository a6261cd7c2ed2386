#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "adl/bits.hpp"
#include "adl/dataset.hpp"
#include "adl/hypothesis.hpp"
#include "adl/multilinear.hpp"
#include "adl/region.hpp"
#include "adl/rng.hpp"

using namespace adl;

namespace {

BitVector random_point(int n, Rng& rng) {
  BitVector x(n);
  for (int i = 0; i < n; ++i) x.set(i, rng.coin());
  return x;
}

bool naive_lex_less(const BitVector& a, const BitVector& b) {
  const auto ia = a.indices(), ib = b.indices();
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

}  // namespace

TEST_CASE("BitVector basics and string convention") {
  // leftmost character is coordinate 0
  BitVector x = BitVector::from_string("1101");
  CHECK(x.dimension() == 4);
  CHECK(x.get(0));
  CHECK(x.get(1));
  CHECK_FALSE(x.get(2));
  CHECK(x.get(3));
  CHECK(x.count() == 3);
  CHECK(x.to_string() == "1101");

  CoordSet s = CoordSet::from_indices(4, {2});
  CHECK(x.count_and(s) == 0);
  CHECK_FALSE(x.any_and(s));
  CoordSet s2 = CoordSet::from_indices(4, {0, 2});
  CHECK(x.count_and(s2) == 1);

  CHECK_THROWS_AS(x.get(4), std::invalid_argument);
  CHECK_THROWS_AS((void)x.count_and(CoordSet(5)), std::invalid_argument);
  CHECK_THROWS_AS(BitVector::from_string("10x"), std::invalid_argument);
}

TEST_CASE("BitVector word-boundary edges") {
  for (int n : {1, 63, 64, 65, 128, 130}) {
    BitVector ones = BitVector::all_ones(n);
    CHECK(ones.count() == n);
    CHECK(ones.complement_set().count() == 0);
    BitVector z(n);
    CHECK(z.complement_set() == ones);
    Rng rng(7u + static_cast<uint64_t>(n));
    BitVector a = random_point(n, rng), b = random_point(n, rng);
    CHECK(a.count_and(b) == a.and_with(b).count());
    CHECK(a.and_not(b).count() + a.count_and(b) == a.count());
    CHECK(a.is_subset_of(ones));
  }
}

TEST_CASE("BitVector sequence-lex order matches the naive comparator") {
  // hand cases: {} < {0} < {0,1} < {0,2} < {1}
  const int n = 4;
  auto S = [&](std::vector<int> v) { return CoordSet::from_indices(n, v); };
  CHECK(CoordSet::lex_less(S({}), S({0})));
  CHECK(CoordSet::lex_less(S({0}), S({0, 1})));
  CHECK(CoordSet::lex_less(S({0, 1}), S({0, 2})));
  CHECK(CoordSet::lex_less(S({0, 2}), S({1})));
  CHECK_FALSE(CoordSet::lex_less(S({1}), S({0, 2})));
  CHECK_FALSE(CoordSet::lex_less(S({1}), S({1})));

  Rng rng(99);
  for (int trial = 0; trial < 4000; ++trial) {
    const int dim = 1 + static_cast<int>(rng.below(70));
    BitVector a = random_point(dim, rng), b = random_point(dim, rng);
    CHECK(CoordSet::lex_less(a, b) == naive_lex_less(a, b));
  }
}

TEST_CASE("Region membership semantics") {
  const int n = 6;
  Rng rng(3);
  const CoordSet I = CoordSet::from_indices(n, {0, 2, 4});
  Region r_all = Region::all();
  Region r_coord = Region::coordinate_one(2);
  Region r_le = Region::weight_at_most(I, 1);
  Region r_gt = Region::weight_more_than(I, 1);
  Region r_and = Region::intersect({r_coord, r_le});
  Region r_not = Region::complement(r_coord);

  for (int trial = 0; trial < 300; ++trial) {
    BitVector x = random_point(n, rng);
    const int w = x.count_and(I);
    CHECK(r_all.contains(x));
    CHECK(r_coord.contains(x) == x.get(2));
    CHECK(r_le.contains(x) == (w <= 1));
    CHECK(r_gt.contains(x) == (w > 1));
    CHECK(r_and.contains(x) == (x.get(2) && w <= 1));
    CHECK(r_not.contains(x) == !x.get(2));
    CHECK(Region::minus(r_le, r_coord).contains(x) == (w <= 1 && !x.get(2)));
  }
  CHECK(r_all.kind() == Region::Kind::All);
  CHECK(Region::intersect({}).contains(random_point(n, rng)));
  CHECK_THROWS_AS(r_coord.contains(BitVector(2)), std::invalid_argument);
}

TEST_CASE("MultilinearPolynomial evaluation, merge, degree") {
  const int n = 5;
  auto S = [&](std::vector<int> v) { return CoordSet::from_indices(n, v); };
  MultilinearPolynomial p(n, {{S({}), 1.0},
                              {S({0, 3}), 2.0},
                              {S({1}), -0.5},
                              {S({0, 3}), 0.5}});
  CHECK(p.terms().size() == 3);  // duplicate {0,3} merged
  CHECK(p.degree() == 2);
  // p(x) = 1 - 0.5 x1 + 2.5 x0 x3
  BitVector x = BitVector::from_string("10010");
  CHECK(p.eval(x) == doctest::Approx(1.0 + 2.5).epsilon(1e-15));
  BitVector z = BitVector::from_string("01000");
  CHECK(p.eval(z) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(MultilinearPolynomial::constant(n, 3.25).eval(z) == 3.25);
  CHECK(MultilinearPolynomial::constant(n, 0.0).terms().empty());

  // random polynomials against direct subset-sum evaluation
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<MultilinearTerm> terms;
    const int k = 1 + static_cast<int>(rng.below(10));
    for (int j = 0; j < k; ++j)
      terms.push_back({random_point(n, rng), rng.uniform01() * 4 - 2});
    MultilinearPolynomial q(n, terms);
    for (int t = 0; t < 20; ++t) {
      BitVector pt = random_point(n, rng);
      double want = 0.0;
      for (const auto& tm : terms)
        if (tm.vars.is_subset_of(pt)) want += tm.coeff;
      CHECK(q.eval(pt) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("Hypothesis kinds evaluate per definition") {
  const int n = 4;
  auto S = [&](std::vector<int> v) { return CoordSet::from_indices(n, v); };
  BitVector x = BitVector::from_string("1010");

  CHECK(Hypothesis::constant(1).eval(x) == 1);
  CHECK(Hypothesis::constant(0).eval(x) == 0);
  CHECK_THROWS_AS(Hypothesis::constant(2), std::invalid_argument);

  CHECK(Hypothesis::disjunction(S({1, 2})).eval(x) == 1);
  CHECK(Hypothesis::disjunction(S({1, 3})).eval(x) == 0);
  CHECK(Hypothesis::disjunction(S({})).eval(x) == 0);

  // threshold at equality fires (h = 1 iff p >= t)
  MultilinearPolynomial p(n, {{S({0}), 0.8}});
  CHECK(Hypothesis::threshold_poly(p, 0.8).eval(x) == 1);
  CHECK(Hypothesis::threshold_poly(p, 0.8 + 1e-12).eval(x) == 0);

  Region light = Region::weight_at_most(S({0, 1, 2, 3}), 1);
  Hypothesis split = Hypothesis::region_split(light, Hypothesis::constant(0), Hypothesis::constant(1));
  CHECK(split.eval(x) == 1);  // weight 2 -> outside
  CHECK(split.eval(BitVector::from_string("1000")) == 0);

  // decision list: first match wins
  Hypothesis dl = Hypothesis::decision_list(
      {{Region::coordinate_one(0), Hypothesis::constant(1)},
       {Region::coordinate_one(2), Hypothesis::constant(0)}},
      1);
  CHECK(dl.eval(BitVector::from_string("1010")) == 1);
  CHECK(dl.eval(BitVector::from_string("0010")) == 0);
  CHECK(dl.eval(BitVector::from_string("0100")) == 1);  // default

  // weighted majority, tie resolves to 1
  Hypothesis maj = Hypothesis::weighted_majority(
      {{1.0, Hypothesis::constant(1)}, {1.0, Hypothesis::constant(0)}});
  CHECK(maj.eval(x) == 1);
  Hypothesis maj0 = Hypothesis::weighted_majority(
      {{1.0, Hypothesis::constant(1)}, {2.0, Hypothesis::constant(0)}});
  CHECK(maj0.eval(x) == 0);
  CHECK_THROWS_AS(Hypothesis::weighted_majority({}), std::invalid_argument);
  CHECK_THROWS_AS(Hypothesis::weighted_majority({{-1.0, Hypothesis::constant(1)}}),
                  std::invalid_argument);
}

TEST_CASE("Hypothesis evaluation is total on random trees") {
  Rng rng(23);
  const int n = 8;
  std::vector<Hypothesis> pool;
  pool.push_back(Hypothesis::constant(0));
  pool.push_back(Hypothesis::constant(1));
  pool.push_back(Hypothesis::disjunction(random_point(n, rng)));
  for (int round = 0; round < 60; ++round) {
    const uint64_t pick = rng.below(4);
    const Hypothesis& a = pool[rng.below(pool.size())];
    const Hypothesis& b = pool[rng.below(pool.size())];
    if (pick == 0) {
      pool.push_back(Hypothesis::region_split(
          Region::weight_at_most(random_point(n, rng), static_cast<int>(rng.below(n))), a, b));
    } else if (pick == 1) {
      pool.push_back(Hypothesis::decision_list(
          {{Region::coordinate_one(static_cast<int>(rng.below(n))), a}},
          static_cast<int>(rng.below(2))));
    } else if (pick == 2) {
      pool.push_back(Hypothesis::weighted_majority({{rng.uniform01(), a}, {rng.uniform01(), b}}));
    } else {
      MultilinearPolynomial q(n, {{random_point(n, rng), rng.uniform01() * 2 - 1}});
      pool.push_back(Hypothesis::threshold_poly(q, rng.uniform01() - 0.5));
    }
  }
  for (const auto& h : pool) {
    for (int t = 0; t < 10; ++t) {
      const int v = h.eval(random_point(n, rng));
      CHECK((v == 0 || v == 1));
    }
  }
}

TEST_CASE("ExplicitDistribution validation") {
  const int n = 2;
  auto X = [](const char* s) { return BitVector::from_string(s); };
  CHECK_NOTHROW(ExplicitDistribution(n, {{X("00"), 0, 0.5}, {X("00"), 1, 0.5}}));
  CHECK_THROWS_AS(ExplicitDistribution(n, {{X("00"), 0, 0.5}, {X("01"), 1, 0.6}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ExplicitDistribution(n, {{X("00"), 0, 1.5}, {X("01"), 1, -0.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ExplicitDistribution(n, {{X("00"), 2, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ExplicitDistribution(n, {{X("00"), 0, 0.5}, {X("00"), 0, 0.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ExplicitDistribution(n, {{X("000"), 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ExplicitDistribution(n, {}), std::invalid_argument);
  // within tolerance is accepted
  CHECK_NOTHROW(ExplicitDistribution(n, {{X("00"), 0, 0.5 + 4e-10}, {X("01"), 1, 0.5}}));
}

TEST_CASE("hypothesis_error exact on a frozen hand case") {
  const int n = 2;
  auto X = [](const char* s) { return BitVector::from_string(s); };
  ExplicitDistribution d(n, {{X("00"), 0, 0.25},
                             {X("01"), 1, 0.25},
                             {X("10"), 1, 0.25},
                             {X("11"), 1, 0.25}});
  Hypothesis h = Hypothesis::disjunction(CoordSet::from_indices(n, {0}));
  // wrong only on x=01: error exactly 0.25
  CHECK(hypothesis_error(h, d) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(disjunction_error(CoordSet::from_indices(n, {0}), d) ==
        doctest::Approx(0.25).epsilon(1e-12));

  EmpiricalSample s(n, {{X("00"), 0}, {X("01"), 1}, {X("10"), 1}});
  CHECK(hypothesis_error(h, s) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("distribution and sample files round-trip") {
  const int n = 3;
  auto X = [](const char* s) { return BitVector::from_string(s); };
  ExplicitDistribution d(n, {{X("101"), 1, 0.125},
                             {X("010"), 0, 0.375},
                             {X("000"), 1, 0.5}});
  const std::string dp = "roundtrip_dist.txt";
  save_distribution(d, dp);
  ExplicitDistribution d2 = load_distribution(dp);
  REQUIRE(d2.support().size() == d.support().size());
  for (size_t i = 0; i < d.support().size(); ++i) {
    CHECK(d2.support()[i].x == d.support()[i].x);
    CHECK(d2.support()[i].y == d.support()[i].y);
    CHECK(d2.support()[i].p == d.support()[i].p);  // %.17g round-trips exactly
  }

  EmpiricalSample s(n, {{X("110"), 1}, {X("110"), 1}, {X("001"), 0}});
  const std::string sp = "roundtrip_sample.txt";
  save_sample(s, sp);
  EmpiricalSample s2 = load_sample(sp);
  REQUIRE(s2.size() == 3);
  CHECK(s2.examples()[1].x == X("110"));
  CHECK(s2.examples()[2].y == 0);

  CHECK_THROWS(load_distribution(sp));  // wrong column count
  CHECK_THROWS(load_sample(dp));
  CHECK_THROWS(load_distribution("no_such_file.txt"));
  std::remove(dp.c_str());
  std::remove(sp.c_str());
}

TEST_CASE("monotonization preserves predictions and labels") {
  Rng rng(41);
  const int n = 5;
  for (int trial = 0; trial < 40; ++trial) {
    BitVector x = random_point(n, rng);
    BitVector z = monotonize_point(x);
    REQUIRE(z.dimension() == 2 * n);
    for (int i = 0; i < n; ++i) {
      CHECK(z.get(i) == x.get(i));
      CHECK(z.get(n + i) == !x.get(i));
    }
    CHECK(z.count() == n);  // exactly n ones after the reduction

    GeneralDisjunction f{random_point(n, rng), random_point(n, rng)};
    MonotoneDisjunction g = monotone_image(f);
    CHECK(f.eval(x) == g.eval(z));
  }
}
