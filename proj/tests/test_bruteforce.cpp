#include "doctest.h"

#include <cmath>
#include <vector>

#include "adl/bruteforce.hpp"
#include "adl/generators.hpp"
#include "adl/region.hpp"
#include "adl/rng.hpp"

using namespace adl;

namespace {

ExplicitDistribution random_instance(int n, Rng& rng, int points = 12) {
  std::vector<WeightedExample> support;
  std::vector<double> mass;
  double total = 0.0;
  std::vector<BitVector> xs;
  for (int i = 0; i < points; ++i) {
    BitVector x(n);
    for (int j = 0; j < n; ++j) x.set(j, rng.coin());
    bool dup = false;
    for (const auto& seen : xs)
      if (seen == x) dup = true;
    if (dup) continue;
    xs.push_back(x);
    mass.push_back(rng.uniform01() + 0.05);
    total += mass.back();
  }
  for (size_t i = 0; i < xs.size(); ++i) {
    const double p = mass[i] / total;
    if (rng.uniform01() < 0.3) {
      support.push_back({xs[i], 0, p / 2});
      support.push_back({xs[i], 1, p / 2});
    } else {
      support.push_back({xs[i], rng.coin() ? 1 : 0, p});
    }
  }
  return ExplicitDistribution(n, std::move(support));
}

}  // namespace

TEST_CASE("opt_enumerate frozen small cases") {
  // x=0 labeled 1, x=1 labeled 0: disjunctions and the constant all pay 1/2
  auto X = [](const char* s) { return BitVector::from_string(s); };
  ExplicitDistribution d1(1, {{X("0"), 1, 0.5}, {X("1"), 0, 0.5}});
  OptResult r1 = opt_enumerate(d1, ConceptClass::MonotoneConst1);
  CHECK(r1.opt == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(r1.is_const1);          // empty support ties, subsets win ties
  CHECK(r1.support.count() == 0);
  CHECK(r1.count_enumerated == 3);    // {}, {0}, const-1

  // realizable planted concept: OPT = 0
  const int n = 6;
  MonotoneDisjunction f{CoordSet::from_indices(n, {1, 4})};
  ExplicitDistribution clean = gen_planted(n, f, MarginalSpec::weight_band(0, 3), 0.0, 3);
  OptResult r2 = opt_enumerate(clean, ConceptClass::Monotone);
  CHECK(r2.opt == 0.0);
  CHECK(disjunction_error(r2.support, clean) == 0.0);

  // coin labels: every concept errs exactly 1/2; lex-smallest argmin is {}
  ExplicitDistribution coin(2, {{X("00"), 0, 0.125}, {X("00"), 1, 0.125},
                                {X("01"), 0, 0.125}, {X("01"), 1, 0.125},
                                {X("10"), 0, 0.125}, {X("10"), 1, 0.125},
                                {X("11"), 0, 0.125}, {X("11"), 1, 0.125}});
  OptResult r3 = opt_enumerate(coin, ConceptClass::Monotone);
  CHECK(r3.opt == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r3.support.count() == 0);
}

TEST_CASE("negative literals beat monotone where the labels demand them") {
  auto X = [](const char* s) { return BitVector::from_string(s); };
  ExplicitDistribution d(2, {{X("00"), 1, 0.25}, {X("01"), 1, 0.25},
                             {X("10"), 0, 0.25}, {X("11"), 0, 0.25}});
  OptResult mono = opt_enumerate(d, ConceptClass::Monotone);
  CHECK(mono.opt == doctest::Approx(0.5).epsilon(1e-12));
  OptResult gen = opt_enumerate(d, ConceptClass::GeneralLiterals);
  CHECK(gen.opt == 0.0);
  CHECK(gen.literals.pos.count() == 0);
  CHECK(gen.literals.neg == CoordSet::from_indices(2, {0}));
  CHECK(gen.count_enumerated == 9);
}

TEST_CASE("monotone+const1 never loses to monotone alone") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    ExplicitDistribution d = random_instance(5, rng);
    OptResult a = opt_enumerate(d, ConceptClass::Monotone);
    OptResult b = opt_enumerate(d, ConceptClass::MonotoneConst1);
    CHECK(b.opt <= a.opt + 1e-15);
  }
}

TEST_CASE("monotonization preserves the general-literal optimum") {
  Rng rng(29);
  for (int trial = 0; trial < 15; ++trial) {
    ExplicitDistribution d = random_instance(3, rng, 8);
    OptResult gen = opt_enumerate(d, ConceptClass::GeneralLiterals);
    OptResult mono = opt_enumerate(monotonize_instance(d), ConceptClass::Monotone);
    CHECK(mono.opt == doctest::Approx(gen.opt).epsilon(1e-12));
  }
}

TEST_CASE("parallel enumeration equals the serial reference") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    ExplicitDistribution d = random_instance(10, rng, 30);
    for (ConceptClass cls : {ConceptClass::Monotone, ConceptClass::MonotoneConst1}) {
      OptResult par = opt_enumerate(d, cls, 10000000, 4);
      OptResult ser = opt_enumerate_serial(d, cls);
      CHECK(par.opt == ser.opt);
      CHECK(par.support == ser.support);
      CHECK(par.is_const1 == ser.is_const1);
      CHECK(par.count_enumerated == ser.count_enumerated);
    }
    ExplicitDistribution g = random_instance(7, rng, 16);
    OptResult par = opt_enumerate(g, ConceptClass::GeneralLiterals, 10000000, 3);
    OptResult ser = opt_enumerate_serial(g, ConceptClass::GeneralLiterals);
    CHECK(par.opt == ser.opt);
    CHECK(par.literals.pos == ser.literals.pos);
    CHECK(par.literals.neg == ser.literals.neg);
  }
}

TEST_CASE("caps refuse oversized classes") {
  auto X = [](const char* s) { return BitVector::from_string(s); };
  std::string zeros(24, '0');
  ExplicitDistribution d(24, {{BitVector::from_string(zeros), 1, 1.0}});
  CHECK_THROWS_AS(opt_enumerate(d, ConceptClass::Monotone), std::invalid_argument);
  ExplicitDistribution g(15, {{BitVector(15).complement_set(), 1, 1.0}});
  CHECK_THROWS_AS(opt_enumerate(g, ConceptClass::GeneralLiterals), std::invalid_argument);
  (void)X;
}

TEST_CASE("exhaustive error oracle matches and decomposes decision lists") {
  Rng rng(53);
  const int n = 6;
  for (int trial = 0; trial < 10; ++trial) {
    ExplicitDistribution d = random_instance(n, rng, 20);

    std::vector<std::pair<Region, Hypothesis>> entries;
    const CoordSet all = CoordSet::all_ones(n);
    entries.push_back({Region::weight_at_most(all, 1), Hypothesis::constant(static_cast<int>(rng.below(2)))});
    entries.push_back({Region::coordinate_one(static_cast<int>(rng.below(n))),
                       Hypothesis::disjunction(CoordSet::from_indices(n, {0, 2}))});
    Hypothesis dl = Hypothesis::decision_list(entries, 1);

    const double direct = exhaustive_hypothesis_error(dl, d);
    CHECK(direct == doctest::Approx(hypothesis_error(dl, d)).epsilon(1e-15));

    // additivity over the first-match partition
    double by_parts = 0.0;
    for (const auto& e : d.support()) {
      int pred = -1;
      for (const auto& [reg, h] : entries)
        if (reg.contains(e.x)) {
          pred = h.eval(e.x);
          break;
        }
      if (pred < 0) pred = 1;
      if (pred != e.y) by_parts += e.p;
    }
    CHECK(by_parts == doctest::Approx(direct).epsilon(1e-15));
  }
}
