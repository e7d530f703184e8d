#include "curvebound/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "curvebound/errors.hpp"

namespace curvebound {

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double mod_two_pi(double theta) {
  double t = normalize_angle(theta);
  if (t < kSnapTol || kTwoPi - t < kSnapTol) t = 0.0;
  return t;
}

double angular_distance(double a, double b) {
  double d = std::fabs(normalize_angle(a) - normalize_angle(b));
  return std::min(d, kTwoPi - d);
}

CurvatureBound::CurvatureBound(double kappa_) : kappa(kappa_) {
  if (!(kappa > 0.0)) {
    throw std::invalid_argument("curvature bound must be positive");
  }
}

TurnCenters turn_centers(const OrientedPose& p, const CurvatureBound& k) {
  const double r = k.radius();
  const double s = std::sin(p.theta);
  const double c = std::cos(p.theta);
  return {{p.x + r * s, p.y - r * c}, {p.x - r * s, p.y + r * c}};
}

OrientedPose propagate(const OrientedPose& p, const PathSegment& seg,
                       const CurvatureBound& k) {
  const double m = seg.magnitude;
  const double r = k.radius();
  switch (seg.kind) {
    case SegmentKind::Straight:
      return {p.x + m * std::cos(p.theta), p.y + m * std::sin(p.theta), p.theta};
    case SegmentKind::LeftArc: {
      const Vec2 c = turn_centers(p, k).left;
      const double t = p.theta + m;
      return {c.x + r * std::sin(t), c.y - r * std::cos(t), t};
    }
    case SegmentKind::RightArc: {
      const Vec2 c = turn_centers(p, k).right;
      const double t = p.theta - m;
      return {c.x - r * std::sin(t), c.y + r * std::cos(t), t};
    }
  }
  return p;
}

OrientedPose end_pose(const CurvaturePath& path) {
  OrientedPose p = path.start;
  for (const PathSegment& seg : path.segments) p = propagate(p, seg, path.bound);
  return p;
}

double path_length(const CurvaturePath& path) {
  double total = 0.0;
  for (const PathSegment& seg : path.segments) total += seg.length(path.bound);
  return total;
}

std::vector<SamplePoint> sample(const CurvaturePath& path, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("sample step must be positive");

  const double total = path_length(path);
  std::vector<SamplePoint> out;

  // Pose at the start of the segment currently being walked.
  OrientedPose seg_start = path.start;
  std::size_t seg = 0;
  double seg_begin = 0.0;
  double seg_len = path.segments.empty() ? 0.0 : path.segments[0].length(path.bound);

  auto pose_at = [&](double s) {
    // Advance the segment cursor; attribute boundary arclengths to the
    // segment they end.
    while (seg + 1 < path.segments.size() && s > seg_begin + seg_len + kSnapTol) {
      seg_start = propagate(seg_start, path.segments[seg], path.bound);
      seg_begin += seg_len;
      ++seg;
      seg_len = path.segments[seg].length(path.bound);
    }
    if (path.segments.empty()) return SamplePoint{s, seg_start, 0};
    PathSegment part = path.segments[seg];
    const double local = std::clamp(s - seg_begin, 0.0, seg_len);
    part.magnitude = part.is_arc() ? local * path.bound.kappa : local;
    return SamplePoint{s, propagate(seg_start, part, path.bound), seg};
  };

  const auto n_steps = static_cast<std::size_t>(std::floor(total / step + kSnapTol));
  for (std::size_t i = 0; i <= n_steps; ++i) out.push_back(pose_at(i * step));
  if (out.empty() || total - out.back().arclength > kSnapTol) {
    out.push_back(pose_at(total));
    out.back().arclength = total;
  } else {
    out.back().arclength = total;
  }
  return out;
}

ValidationReport validate(const CurvaturePath& path, const OrientedPose& X,
                          const OrientedPose& Y) {
  ValidationReport report;
  const OrientedPose end = end_pose(path);
  const double start_pos = (path.start.position() - X.position()).norm();
  const double end_pos = (end.position() - Y.position()).norm();
  report.endpoint_position_error = std::max(start_pos, end_pos);
  report.endpoint_heading_error = std::max(angular_distance(path.start.theta, X.theta),
                                           angular_distance(end.theta, Y.theta));
  report.curvature_ok = true;
  for (const PathSegment& seg : path.segments) {
    if (seg.magnitude < 0.0) report.curvature_ok = false;
  }
  report.length = path_length(path);
  return report;
}

InfeasibleLength::InfeasibleLength(double target_, double min_length_, bool has_gap_,
                                   double gap_low_, double gap_high_)
    : Error("requested length is not achievable between the given poses"),
      target(target_),
      min_length(min_length_),
      has_gap(has_gap_),
      gap_low(gap_low_),
      gap_high(gap_high_) {}

}  // namespace curvebound
