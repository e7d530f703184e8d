#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace curvebound {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Library-wide default tolerances.
inline constexpr double kPoseTol = 1e-9;
inline constexpr double kLengthTol = 1e-9;
// Segment magnitudes below this are snapped to exact zero so degenerate
// words (C, S, CS, SC, CC) keep their structure instead of picking up a
// spurious near-full turn.
inline constexpr double kSnapTol = 1e-12;
// Slack for geometric existence comparisons (tangency thresholds); applied
// toward existence.
inline constexpr double kGeomSlack = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double angle() const { return std::atan2(y, x); }
};

inline Vec2 unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }
// Counterclockwise quarter turn.
inline Vec2 left_normal(const Vec2& v) { return {-v.y, v.x}; }

// Wraps an angle into [0, 2*pi).
double normalize_angle(double theta);

// Wraps into [0, 2*pi) and snaps dust at either end of the range to exact 0,
// so a turn that should be absent does not come back as a full loop.
double mod_two_pi(double theta);

// Minimal circular distance between two angles, in [0, pi].
double angular_distance(double a, double b);

// A planar position plus a heading measured counterclockwise from the x axis.
// Heading is normalized to [0, 2*pi) on construction.
struct OrientedPose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  OrientedPose() = default;
  OrientedPose(double x_, double y_, double theta_)
      : x(x_), y(y_), theta(normalize_angle(theta_)) {}

  Vec2 position() const { return {x, y}; }
  Vec2 direction() const { return unit_vector(theta); }

  bool operator==(const OrientedPose& o) const {
    return x == o.x && y == o.y && theta == o.theta;
  }
};

// Maximum curvature; the minimum turn radius is 1/kappa.
struct CurvatureBound {
  double kappa = 1.0;

  CurvatureBound() = default;
  explicit CurvatureBound(double kappa_);

  double radius() const { return 1.0 / kappa; }
};

enum class SegmentKind { LeftArc, RightArc, Straight };

// One path piece: an arc of radius 1/kappa (magnitude in radians) or a
// straight line (magnitude in length units). Magnitudes are nonnegative;
// arcs may exceed a full turn.
struct PathSegment {
  SegmentKind kind = SegmentKind::Straight;
  double magnitude = 0.0;

  static PathSegment left_arc(double radians) { return {SegmentKind::LeftArc, radians}; }
  static PathSegment right_arc(double radians) { return {SegmentKind::RightArc, radians}; }
  static PathSegment straight(double length) { return {SegmentKind::Straight, length}; }

  bool is_arc() const { return kind != SegmentKind::Straight; }
  double length(const CurvatureBound& bound) const {
    return is_arc() ? magnitude / bound.kappa : magnitude;
  }
};

// A curvature-bounded path stored symbolically as a segment list. The
// representation is C1 by construction and every arc has radius exactly
// 1/kappa, so curvature boundedness is structural.
struct CurvaturePath {
  OrientedPose start;
  std::vector<PathSegment> segments;
  CurvatureBound bound;
};

struct ValidationReport {
  double endpoint_position_error = 0.0;
  double endpoint_heading_error = 0.0;
  bool curvature_ok = true;
  double length = 0.0;

  bool within(double tol) const {
    return curvature_ok && endpoint_position_error <= tol &&
           endpoint_heading_error <= tol;
  }
};

struct SamplePoint {
  double arclength = 0.0;
  OrientedPose pose;
  std::size_t segment_index = 0;
};

// Centers of the two radius-1/kappa circles tangent to the pose heading.
struct TurnCenters {
  Vec2 right;
  Vec2 left;
};

TurnCenters turn_centers(const OrientedPose& p, const CurvatureBound& k);

// Exact closed-form pose after traversing one segment.
OrientedPose propagate(const OrientedPose& p, const PathSegment& seg,
                       const CurvatureBound& k);

OrientedPose end_pose(const CurvaturePath& path);

double path_length(const CurvaturePath& path);

// Poses at arclengths {0, step, 2*step, ...} plus one final sample exactly at
// the total length.
std::vector<SamplePoint> sample(const CurvaturePath& path, double step);

// Endpoint check of a path against the boundary poses it is supposed to join.
// A failing report is data, not an error.
ValidationReport validate(const CurvaturePath& path, const OrientedPose& X,
                          const OrientedPose& Y);

}  // namespace curvebound
