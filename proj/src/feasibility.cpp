#include "curvebound/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvebound/errors.hpp"

namespace curvebound {

namespace {

// Slack toward membership: boundary configurations stay elongation-friendly.
constexpr double kMembershipSlack = 1e-9;

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string elongation_class_name(ElongationClass c) {
  switch (c) {
    case ElongationClass::kMajorFirstArc: return "major_first_arc";
    case ElongationClass::kMajorLastArc: return "major_last_arc";
    case ElongationClass::kLongStraight: return "long_straight";
    case ElongationClass::kFarRightCenters: return "far_right_centers";
    case ElongationClass::kFarLeftCenters: return "far_left_centers";
  }
  return "?";
}

ShortestShape shortest_shape(const OrientedPose& X, const OrientedPose& Y,
                             const CurvatureBound& k) {
  ShortestShape shape{shortest(X, Y, k)};
  const auto& segs = shape.result.path.segments;
  if (is_ccc(shape.result.word)) {
    shape.first_arc = segs.at(0).magnitude;
    shape.middle_arc = segs.at(1).magnitude;
    shape.last_arc = segs.at(2).magnitude;
  } else {
    shape.first_arc = segs.at(0).magnitude;
    shape.straight = segs.at(1).magnitude;
    shape.last_arc = segs.at(2).magnitude;
  }
  return shape;
}

Classification classify(const OrientedPose& X, const OrientedPose& Y,
                        const CurvatureBound& k) {
  const ShortestShape shape = shortest_shape(X, Y, k);
  Classification cls;
  cls.shortest_word = shape.result.word;
  cls.ccc_shortest = is_ccc(shape.result.word);
  if (cls.ccc_shortest) return cls;

  const double threshold = 4.0 / k.kappa - kMembershipSlack;
  const TurnCenters cx = turn_centers(X, k);
  const TurnCenters cy = turn_centers(Y, k);
  auto set = [&](ElongationClass c, bool value) {
    cls.memberships[static_cast<int>(c)] = value;
  };
  set(ElongationClass::kMajorFirstArc, shape.first_arc >= kPi - kMembershipSlack);
  set(ElongationClass::kMajorLastArc, shape.last_arc >= kPi - kMembershipSlack);
  set(ElongationClass::kLongStraight, shape.straight >= threshold);
  set(ElongationClass::kFarRightCenters, (cy.right - cx.right).norm() >= threshold);
  set(ElongationClass::kFarLeftCenters, (cy.left - cx.left).norm() >= threshold);
  cls.has_length_gap = !cls.any_membership();
  return cls;
}

GapBounds gap_bounds(const OrientedPose& X, const OrientedPose& Y,
                     const CurvatureBound& k) {
  const Classification cls = classify(X, Y, k);
  if (!cls.has_length_gap) throw NotInNablaO();

  const CandidateTable table = candidate_table(X, Y, k);
  const ShortestResult gm = shortest(X, Y, k);

  GapBounds gap;
  gap.l1 = std::max(table.at(CandidateSlot::kRlrShort).length,
                    table.at(CandidateSlot::kLrlShort).length);

  // Candidates for the upper bound, scanned in the fixed tie-break order.
  struct Option {
    GapRealizer realizer;
    CandidateSlot slot;
    bool is_loop;
  };
  const Option options[] = {
      {GapRealizer::kFullLoop, CandidateSlot::kLsl, true},
      {GapRealizer::kLrlLong, CandidateSlot::kLrlLong, false},
      {GapRealizer::kRlrLong, CandidateSlot::kRlrLong, false},
      {GapRealizer::kCscWord, CandidateSlot::kRsr, false},
      {GapRealizer::kCscWord, CandidateSlot::kRsl, false},
      {GapRealizer::kCscWord, CandidateSlot::kLsr, false},
      {GapRealizer::kCscWord, CandidateSlot::kLsl, false},
  };
  gap.l2 = kInf;
  for (const Option& opt : options) {
    double length = kInf;
    const CandidateEntry* entry = nullptr;
    if (opt.is_loop) {
      length = gm.length + kTwoPi / k.kappa;
    } else {
      entry = &table.at(opt.slot);
      if (!entry->exists()) continue;
      length = entry->length;
      // The shortest word itself is excluded from the CSC alternatives.
      if (opt.realizer == GapRealizer::kCscWord &&
          std::fabs(length - gm.length) <= kSnapTol) {
        continue;
      }
    }
    if (length < gap.l2) {
      gap.l2 = length;
      gap.realizer = opt.realizer;
      gap.realizer_path = (entry != nullptr) ? entry->path : std::nullopt;
    }
  }
  return gap;
}

FeasibleLengthSet feasible_set(const OrientedPose& X, const OrientedPose& Y,
                               const CurvatureBound& k) {
  const ShortestResult gm = shortest(X, Y, k);
  FeasibleLengthSet set;
  set.min_length = gm.length;
  const Classification cls = classify(X, Y, k);
  if (cls.has_length_gap) {
    GapBounds gap = gap_bounds(X, Y, k);
    // A collapsed interval is no gap at all.
    if (gap.l2 - gap.l1 > kLengthTol) set.gap = std::move(gap);
  }
  return set;
}

bool contains(const FeasibleLengthSet& set, double s) {
  if (s < set.min_length) return false;
  if (set.gap && s > set.gap->l1 && s < set.gap->l2) return false;
  return true;
}

}  // namespace curvebound
