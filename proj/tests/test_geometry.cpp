#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "curvebound/geometry.hpp"

using namespace curvebound;
using curvebound::testing::Rng;

namespace {

CurvaturePath random_path(Rng& rng, int segments) {
  CurvaturePath path{rng.pose_in_box(3.0), {}, CurvatureBound(1.0)};
  for (int i = 0; i < segments; ++i) {
    const double pick = rng.uniform(0.0, 3.0);
    if (pick < 1.0) {
      path.segments.push_back(PathSegment::left_arc(rng.uniform(0.0, kTwoPi)));
    } else if (pick < 2.0) {
      path.segments.push_back(PathSegment::right_arc(rng.uniform(0.0, kTwoPi)));
    } else {
      path.segments.push_back(PathSegment::straight(rng.uniform(0.0, 4.0)));
    }
  }
  return path;
}

}  // namespace

TEST_CASE("turn centers of axis-aligned poses") {
  const CurvatureBound k(1.0);
  const TurnCenters tc = turn_centers({0, 0, 0}, k);
  CHECK(tc.right.x == doctest::Approx(0.0));
  CHECK(tc.right.y == doctest::Approx(-1.0));
  CHECK(tc.left.x == doctest::Approx(0.0));
  CHECK(tc.left.y == doctest::Approx(1.0));

  const TurnCenters tq = turn_centers({0, 0, kPi / 2}, k);
  CHECK(tq.right.x == doctest::Approx(1.0));
  CHECK(tq.right.y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tq.left.x == doctest::Approx(-1.0));
}

TEST_CASE("turn centers sit at unit distance, perpendicular to the heading") {
  const CurvatureBound k(1.0);
  const OrientedPose p{3.5313, -0.8619, 0.5305};
  const TurnCenters tc = turn_centers(p, k);
  for (const Vec2& c : {tc.right, tc.left}) {
    CHECK((c - p.position()).norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs((c - p.position()).dot(p.direction())) < 1e-12);
  }
}

TEST_CASE("propagate closed forms") {
  const CurvatureBound k(1.0);
  const OrientedPose straight =
      propagate({0, 0, 0}, PathSegment::straight(10.0), k);
  CHECK(straight.x == doctest::Approx(10.0));
  CHECK(straight.y == doctest::Approx(0.0));

  const OrientedPose half_turn = propagate({0, 0, 0}, PathSegment::left_arc(kPi), k);
  CHECK(half_turn.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(half_turn.y == doctest::Approx(2.0));
  CHECK(half_turn.theta == doctest::Approx(kPi));

  const OrientedPose loop = propagate({0, 0, 0}, PathSegment::right_arc(kTwoPi), k);
  CHECK(std::fabs(loop.x) < 1e-12);
  CHECK(std::fabs(loop.y) < 1e-12);
  CHECK(angular_distance(loop.theta, 0.0) < 1e-12);
}

TEST_CASE("end pose folds over segments") {
  const CurvatureBound k(1.0);
  CHECK(end_pose({{1, 2, 3}, {}, k}) == OrientedPose{1, 2, 3});

  const CurvaturePath path{{0, 0, 0},
                           {PathSegment::left_arc(kPi), PathSegment::straight(2.0)},
                           k};
  const OrientedPose end = end_pose(path);
  CHECK(end.x == doctest::Approx(-2.0));
  CHECK(end.y == doctest::Approx(2.0));
  CHECK(end.theta == doctest::Approx(kPi));
}

TEST_CASE("path length sums segments in length units") {
  CHECK(path_length({{0, 0, 0}, {PathSegment::left_arc(kPi)}, CurvatureBound(1.0)}) ==
        doctest::Approx(kPi));
  CHECK(path_length({{0, 0, 0},
                     {PathSegment::right_arc(kPi / 2), PathSegment::straight(3.0),
                      PathSegment::left_arc(kPi / 2)},
                     CurvatureBound(2.0)}) == doctest::Approx(kPi / 2 + 3.0));
}

TEST_CASE("propagation composes exactly") {
  Rng rng(101);
  const CurvatureBound k(1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const CurvaturePath path = random_path(rng, 4);
    OrientedPose step = path.start;
    for (const PathSegment& seg : path.segments) step = propagate(step, seg, k);
    const OrientedPose folded = end_pose(path);
    CHECK((step.position() - folded.position()).norm() < 1e-12);
    CHECK(angular_distance(step.theta, folded.theta) < 1e-12);
  }
}

TEST_CASE("sampling hits the grid and the exact end") {
  const CurvatureBound k(1.0);
  const CurvaturePath unit{{0, 0, 0}, {PathSegment::straight(1.0)}, k};
  const auto samples = sample(unit, 0.5);
  REQUIRE(samples.size() == 3);
  CHECK(samples[0].arclength == doctest::Approx(0.0));
  CHECK(samples[1].arclength == doctest::Approx(0.5));
  CHECK(samples[2].arclength == doctest::Approx(1.0));

  const CurvaturePath loop{{0, 0, 0}, {PathSegment::left_arc(kTwoPi)}, k};
  const auto loop_samples = sample(loop, kPi);
  REQUIRE(loop_samples.size() == 3);
  CHECK((loop_samples.front().pose.position() - loop_samples.back().pose.position())
            .norm() < 1e-12);
}

TEST_CASE("consecutive samples never jump farther than the step") {
  Rng rng(202);
  for (int trial = 0; trial < 50; ++trial) {
    const CurvaturePath path = random_path(rng, 5);
    const double step = rng.uniform(0.05, 0.5);
    const auto samples = sample(path, step);
    for (std::size_t i = 1; i < samples.size(); ++i) {
      const double jump =
          (samples[i].pose.position() - samples[i - 1].pose.position()).norm();
      CHECK(jump <= step + 1e-12);
    }
    CHECK(samples.back().arclength == doctest::Approx(path_length(path)));
  }
}

TEST_CASE("validation reports endpoint errors as data") {
  const CurvatureBound k(1.0);
  const OrientedPose X{0, 0, 0};
  const OrientedPose Y{5, 0, 0};
  CurvaturePath path{X, {PathSegment::straight(4.9)}, k};
  const ValidationReport report = validate(path, X, Y);
  CHECK(report.endpoint_position_error == doctest::Approx(0.1));
  CHECK(report.curvature_ok);

  const ValidationReport empty = validate({X, {}, k}, X, X);
  CHECK(empty.endpoint_position_error == doctest::Approx(0.0));
  CHECK(empty.endpoint_heading_error == doctest::Approx(0.0));
}

TEST_CASE("full loops leave the end pose unchanged and add exactly one turn") {
  Rng rng(303);
  const CurvatureBound k(1.0);
  for (int trial = 0; trial < 100; ++trial) {
    CurvaturePath path = random_path(rng, 3);
    const OrientedPose before = end_pose(path);
    const double len_before = path_length(path);
    path.segments.insert(path.segments.begin() + trial % (path.segments.size() + 1),
                         PathSegment::left_arc(kTwoPi));
    const OrientedPose after = end_pose(path);
    CHECK((after.position() - before.position()).norm() < 1e-9);
    CHECK(angular_distance(after.theta, before.theta) < 1e-9);
    CHECK(path_length(path) == doctest::Approx(len_before + kTwoPi).epsilon(1e-12));
  }
}

TEST_CASE("length is additive over concatenation") {
  Rng rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    CurvaturePath a = random_path(rng, 3);
    const CurvaturePath b = random_path(rng, 3);
    const double separate = path_length(a) + path_length(b);
    a.segments.insert(a.segments.end(), b.segments.begin(), b.segments.end());
    CHECK(path_length(a) == doctest::Approx(separate).epsilon(1e-12));
  }
}

TEST_CASE("rigid transforms move sampled points rigidly") {
  Rng rng(505);
  const CurvatureBound k(1.0);
  for (int trial = 0; trial < 25; ++trial) {
    CurvaturePath path = random_path(rng, 4);
    const double rot = rng.uniform(0.0, kTwoPi);
    const Vec2 shift{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    auto transform = [&](const OrientedPose& p) {
      const double c = std::cos(rot), s = std::sin(rot);
      return OrientedPose{c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y,
                          p.theta + rot};
    };
    CurvaturePath moved = path;
    moved.start = transform(path.start);
    const auto base = sample(path, 0.25);
    const auto mapped = sample(moved, 0.25);
    REQUIRE(base.size() == mapped.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      const OrientedPose expect = transform(base[i].pose);
      CHECK((mapped[i].pose.position() - expect.position()).norm() < 1e-9);
    }
  }
}
