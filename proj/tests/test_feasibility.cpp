#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "curvebound/errors.hpp"
#include "curvebound/feasibility.hpp"

using namespace curvebound;
using namespace curvebound::testing;

TEST_CASE("long straight pairs join every far-apart class") {
  const CurvatureBound k(1.0);
  const Classification cls = classify({0, 0, 0}, {10, 0, 0}, k);
  CHECK(cls.is_member(ElongationClass::kLongStraight));
  CHECK(cls.is_member(ElongationClass::kFarRightCenters));
  CHECK(cls.is_member(ElongationClass::kFarLeftCenters));
  CHECK_FALSE(cls.has_length_gap);
}

TEST_CASE("scenario gap membership") {
  const CurvatureBound k(1.0);
  CHECK(classify(scenario_start(1, 1), scenario_goal(1), k).has_length_gap);
  CHECK_FALSE(classify(scenario_start(0, 0), scenario_goal(0), k).has_length_gap);
}

TEST_CASE("classify requires distinct oriented points") {
  CHECK_THROWS_AS(classify({0, 0, 0}, {0, 0, 0}, CurvatureBound(1.0)),
                  DegenerateInput);
}

TEST_CASE("gap bounds reproduce the two gapped scenario vehicles") {
  const CurvatureBound k(1.0);
  const GapBounds b2 = gap_bounds(scenario_start(1, 1), scenario_goal(1), k);
  CHECK(b2.l1 == doctest::Approx(kGapB2[0]).epsilon(5e-4));
  CHECK(b2.l2 == doctest::Approx(kGapB2[1]).epsilon(5e-4));

  const GapBounds c4 = gap_bounds(scenario_start(2, 3), scenario_goal(3), k);
  CHECK(c4.l1 == doctest::Approx(kGapC4[0]).epsilon(5e-4));
  CHECK(c4.l2 == doctest::Approx(kGapC4[1]).epsilon(5e-4));
}

TEST_CASE("gap bounds refuse ungapped pairs") {
  CHECK_THROWS_AS(gap_bounds({0, 0, 0}, {10, 0, 0}, CurvatureBound(1.0)), NotInNablaO);
}

TEST_CASE("gap ordering holds on random gapped pairs") {
  Rng rng(111);
  const CurvatureBound k(1.0);
  for (int found = 0; found < 30; ++found) {
    const RandomPair pair = random_gapped_pair(rng, k);
    const FeasibleLengthSet set = feasible_set(pair.start, pair.goal, k);
    REQUIRE(set.gap.has_value());
    CHECK(set.min_length < set.gap->l1);
    CHECK(set.gap->l1 < set.gap->l2);
    CHECK(set.gap->l1 < kTwoPi / k.kappa);
    CHECK(set.gap->l2 <= set.min_length + kTwoPi / k.kappa + 1e-9);
  }
}

TEST_CASE("feasible sets of the scenario vehicles") {
  const CurvatureBound k(1.0);
  const FeasibleLengthSet a5 = feasible_set(scenario_start(0, 4), scenario_goal(4), k);
  CHECK(a5.min_length == doctest::Approx(kMinLengthsA[4]).epsilon(5e-4));
  CHECK_FALSE(a5.gap.has_value());

  const FeasibleLengthSet b2 = feasible_set(scenario_start(1, 1), scenario_goal(1), k);
  CHECK(b2.min_length == doctest::Approx(kMinLengthsB[1]).epsilon(5e-4));
  REQUIRE(b2.gap.has_value());

  const FeasibleLengthSet toy = feasible_set({0, 0, 0}, {10, 0, 0}, k);
  CHECK(toy.min_length == doctest::Approx(10.0));
  CHECK_FALSE(toy.gap.has_value());
}

TEST_CASE("membership respects closed gap endpoints") {
  FeasibleLengthSet set;
  set.min_length = 2.4540;
  set.gap = GapBounds{2.7219, 8.7279, GapRealizer::kCscWord, std::nullopt};
  CHECK(contains(set, 2.7219));
  CHECK(contains(set, 8.7279));
  CHECK_FALSE(contains(set, 5.0));
  CHECK_FALSE(contains(set, 2.0));
  CHECK(contains(set, 2.5));
  CHECK(contains(set, 100.0));
}

TEST_CASE("candidate lengths avoid the open gap") {
  Rng rng(222);
  const CurvatureBound k(1.0);
  for (int found = 0; found < 25; ++found) {
    const RandomPair pair = random_gapped_pair(rng, k);
    const FeasibleLengthSet set = feasible_set(pair.start, pair.goal, k);
    REQUIRE(set.gap.has_value());
    const CandidateTable table = candidate_table(pair.start, pair.goal, k);
    for (const auto& entry : table.entries) {
      if (!entry.exists()) continue;
      const bool inside =
          entry.length > set.gap->l1 + 1e-9 && entry.length < set.gap->l2 - 1e-9;
      CHECK_FALSE(inside);
    }
  }
}

TEST_CASE("classification is rigid-motion invariant") {
  Rng rng(333);
  const CurvatureBound k(1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const RandomPair pair = random_pair(rng, 3.0);
    const Classification base = classify(pair.start, pair.goal, k);
    const double rot = rng.uniform(0.0, kTwoPi);
    const Vec2 shift{rng.uniform(-4, 4), rng.uniform(-4, 4)};
    auto transform = [&](const OrientedPose& p) {
      const double c = std::cos(rot), s = std::sin(rot);
      return OrientedPose{c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y,
                          p.theta + rot};
    };
    const Classification moved =
        classify(transform(pair.start), transform(pair.goal), k);
    CHECK(base.shortest_word == moved.shortest_word);
    CHECK(base.has_length_gap == moved.has_length_gap);
    CHECK(base.ccc_shortest == moved.ccc_shortest);
    for (int c = 0; c < kElongationClasses; ++c) {
      CHECK(base.memberships[c] == moved.memberships[c]);
    }
  }
}
