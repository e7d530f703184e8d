#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "curvebound/dubins.hpp"
#include "curvebound/feasibility.hpp"
#include "curvebound/oracle.hpp"

using namespace curvebound;
using namespace curvebound::testing;

TEST_CASE("brute force recovers the collinear straight") {
  const CurvatureBound k(1.0);
  CHECK(std::fabs(oracle_shortest({0, 0, 0}, {10, 0, 0}, k) - 10.0) < 1e-6);
}

TEST_CASE("brute force matches the gapped scenario vehicle") {
  const CurvatureBound k(1.0);
  const double found = oracle_shortest(scenario_start(1, 1), scenario_goal(1), k);
  CHECK(std::fabs(found - kMinLengthsB[1]) < 1e-3);
}

TEST_CASE("length search on the gapped scenario vehicle") {
  const CurvatureBound k(1.0);
  const OrientedPose X = scenario_start(1, 1);
  const OrientedPose Y = scenario_goal(1);
  CHECK(oracle_exists_length(X, Y, k, 2.6));
  CHECK_FALSE(oracle_exists_length(X, Y, k, 5.0));
  const double lm = shortest(X, Y, k).length;
  CHECK(oracle_exists_length(X, Y, k, lm));
}

TEST_CASE("accepted witnesses are valid paths of the requested length") {
  Rng rng(888);
  const CurvatureBound k(1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const RandomPair pair = random_pair(rng, 3.0);
    const double lm = shortest(pair.start, pair.goal, k).length;
    const double s = lm + rng.uniform(0.0, 0.5);
    const auto witness = oracle_find_length(pair.start, pair.goal, k, s);
    if (!witness) continue;
    CHECK(validate(*witness, pair.start, pair.goal).within(1e-5));
    CHECK(std::fabs(path_length(*witness) - s) < 1e-8);
  }
}

TEST_CASE("no witness below the shortest length") {
  Rng rng(999);
  const CurvatureBound k(1.0);
  for (int trial = 0; trial < 6; ++trial) {
    const RandomPair pair = random_pair(rng, 3.0);
    const double lm = shortest(pair.start, pair.goal, k).length;
    CHECK_FALSE(oracle_exists_length(pair.start, pair.goal, k, 0.9 * lm));
  }
}

TEST_CASE("finer resolution keeps found lengths found") {
  const CurvatureBound k(1.0);
  const OrientedPose X = scenario_start(1, 1);
  const OrientedPose Y = scenario_goal(1);
  OracleConfig coarse;
  OracleConfig fine;
  fine.refine_iters = 2 * coarse.refine_iters;
  const double s = 2.6;
  if (oracle_exists_length(X, Y, k, s, coarse)) {
    CHECK(oracle_exists_length(X, Y, k, s, fine));
  }
}
