#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "curvebound/dubins.hpp"
#include "curvebound/geometry.hpp"

namespace curvebound {

// Reasons a shortest CSC path admits unlimited elongation.
enum class ElongationClass : int {
  kMajorFirstArc = 0,   // first arc of at least pi
  kMajorLastArc,        // last arc of at least pi
  kLongStraight,        // straight of at least 4/kappa
  kFarRightCenters,     // right turn centers at least 4/kappa apart
  kFarLeftCenters,      // left turn centers at least 4/kappa apart
};
inline constexpr int kElongationClasses = 5;

std::string elongation_class_name(ElongationClass c);

struct Classification {
  Word shortest_word = Word::LSL;
  std::array<bool, kElongationClasses> memberships{};
  bool has_length_gap = false;  // CSC shortest and no membership holds
  bool ccc_shortest = false;

  bool is_member(ElongationClass c) const { return memberships[static_cast<int>(c)]; }
  bool any_membership() const {
    for (bool m : memberships)
      if (m) return true;
    return false;
  }
};

// Shape parameters of a shortest path read as a (possibly degenerate)
// three-segment word.
struct ShortestShape {
  ShortestResult result;
  double first_arc = 0.0;   // radians
  double last_arc = 0.0;    // radians
  double straight = 0.0;    // length units
  double middle_arc = 0.0;  // radians, CCC only
};

ShortestShape shortest_shape(const OrientedPose& X, const OrientedPose& Y,
                             const CurvatureBound& k);

Classification classify(const OrientedPose& X, const OrientedPose& Y,
                        const CurvatureBound& k);

// Which candidate realizes the upper gap bound.
enum class GapRealizer { kFullLoop, kLrlLong, kRlrLong, kCscWord };

struct GapBounds {
  double l1 = 0.0;
  double l2 = 0.0;
  GapRealizer realizer = GapRealizer::kFullLoop;
  // Path realizing l2; absent only for the full-loop realizer, which is
  // synthesized from the shortest path on demand.
  std::optional<CurvaturePath> realizer_path;
};

// Bounds of the non-achievable length interval for a gapped pair: l1 is the
// larger short CCC root, l2 the cheapest alternative among the full loop, the
// long CCC roots, and the non-shortest CSC words. Throws NotInNablaO when the
// pair has no gap.
GapBounds gap_bounds(const OrientedPose& X, const OrientedPose& Y,
                     const CurvatureBound& k);

// Exact set of achievable path lengths: [min, inf) or [min, l1] u [l2, inf).
struct FeasibleLengthSet {
  double min_length = 0.0;
  std::optional<GapBounds> gap;
};

FeasibleLengthSet feasible_set(const OrientedPose& X, const OrientedPose& Y,
                               const CurvatureBound& k);

// Membership with closed gap endpoints and a tolerance-free comparison.
bool contains(const FeasibleLengthSet& set, double s);

}  // namespace curvebound
