// Shared fixtures and helpers for the test suites.
#pragma once

#include <cmath>
#include <random>

#include "curvebound/feasibility.hpp"
#include "curvebound/geometry.hpp"

namespace curvebound::testing {

struct PoseFixture {
  double x, y, theta;
};

// Start poses of the three six-vehicle formation scenarios and the shared
// triangle goal poses (heading along +x everywhere).
inline constexpr PoseFixture kScenarioA[6] = {
    {3.5313, -0.8619, 0.5305}, {1.2238, 0.9698, 4.8689}, {-3.5775, 1.3472, 1.6328},
    {1.6878, 0.9028, 2.5119},  {2.9336, 0.0854, 5.4582}, {1.1577, -0.0281, 5.1353}};
inline constexpr PoseFixture kScenarioB[6] = {
    {4.3627, -1.0457, 6.0141}, {-2.3376, 0.2700, 0.2919}, {2.1806, 3.3248, 5.0283},
    {-0.8038, 3.4410, 0.8915}, {-4.5537, -1.3816, 2.6500}, {1.5350, -0.2869, 5.7537}};
inline constexpr PoseFixture kScenarioC[6] = {
    {1.8829, 4.4956, 0.7477},  {-0.9264, 0.0596, 3.1313}, {-3.1202, 1.1104, 6.0302},
    {-4.4641, 1.4021, 0.5136}, {1.6253, -3.9714, 3.9600}, {-0.7889, -2.7028, 1.4063}};

inline constexpr double kSqrt3 = 1.7320508075688772;
inline constexpr PoseFixture kGoals[6] = {{kSqrt3, 0, 0},  {0, 1, 0},
                                          {-kSqrt3, 2, 0}, {-kSqrt3, 0, 0},
                                          {-kSqrt3, -2, 0}, {0, -1, 0}};

// Reference solutions for the three scenarios (unit curvature bound).
inline constexpr double kMinLengthsA[6] = {7.3871, 5.7164, 7.0162,
                                           6.7435, 9.7219, 6.7160};
inline constexpr double kMinLengthsB[6] = {8.5854, 2.4540, 8.6103,
                                           8.4646, 6.3674, 7.0891};
inline constexpr double kMinLengthsC[6] = {8.0845, 5.9104, 7.8796,
                                           3.3402, 6.6030, 7.6161};
inline constexpr double kGapB2[2] = {2.7219, 8.7279};
inline constexpr double kGapC4[2] = {3.6783, 7.8609};
inline constexpr double kFormationTimes[3] = {9.7219, 8.7279, 8.0845};

inline OrientedPose pose(const PoseFixture& f) { return {f.x, f.y, f.theta}; }

inline OrientedPose scenario_start(int scenario, int vehicle) {
  const PoseFixture* table =
      scenario == 0 ? kScenarioA : (scenario == 1 ? kScenarioB : kScenarioC);
  return pose(table[vehicle]);
}

inline OrientedPose scenario_goal(int vehicle) { return pose(kGoals[vehicle]); }

// Deterministic uniform doubles from raw generator bits, stable across
// platforms and standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

  OrientedPose pose_in_box(double half_width) {
    return {uniform(-half_width, half_width), uniform(-half_width, half_width),
            uniform(0.0, kTwoPi)};
  }

 private:
  std::mt19937_64 gen_;
};

struct RandomPair {
  OrientedPose start;
  OrientedPose goal;
};

inline RandomPair random_pair(Rng& rng, double half_width = 5.0) {
  for (;;) {
    const OrientedPose a = rng.pose_in_box(half_width);
    const OrientedPose b = rng.pose_in_box(half_width);
    if ((a.position() - b.position()).norm() > 1e-6) return {a, b};
  }
}

// Rejection-samples a pair whose feasible length set has a gap.
inline RandomPair random_gapped_pair(Rng& rng, const CurvatureBound& k,
                                     double half_width = 3.0) {
  for (;;) {
    const RandomPair pair = random_pair(rng, half_width);
    const FeasibleLengthSet set = feasible_set(pair.start, pair.goal, k);
    if (set.gap) return pair;
  }
}

}  // namespace curvebound::testing
