#include "curvebound/dubins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvebound/errors.hpp"

namespace curvebound {

namespace {

// Acceptance threshold for the endpoint residual of a closed-form chain
// construction. Genuine constructions close to machine precision; anything
// larger means the requested chain does not exist.
constexpr double kChainCheckTol = 1e-6;

bool same_hand(SegmentKind a, SegmentKind b) { return a == b; }

// Heading and length of the straight running from circle a to circle b with
// the given handedness transition. Exact tangency emits a zero straight.
struct Tangent {
  double heading = 0.0;
  double length = 0.0;
};

std::optional<Tangent> tangent_between(const ChainCircle& a, const ChainCircle& b,
                                       double r) {
  const Vec2 v = b.center - a.center;
  const double dist = v.norm();
  if (same_hand(a.hand, b.hand)) {
    // Outer tangent of equal-radius circles: parallel to the center line.
    return Tangent{v.angle(), dist};
  }
  if (b.tangent_to_prev) {
    const double side = (a.hand == SegmentKind::RightArc) ? -1.0 : 1.0;
    return Tangent{v.angle() + side * (kPi / 2.0), 0.0};
  }
  if (dist < 2.0 * r - kGeomSlack) return std::nullopt;
  const double d = std::sqrt(std::max(0.0, dist * dist - 4.0 * r * r));
  const double side = (a.hand == SegmentKind::RightArc) ? -1.0 : 1.0;
  return Tangent{v.angle() + side * std::atan2(2.0 * r, d), d};
}

double arc_sweep(SegmentKind hand, double heading_in, double heading_out) {
  return hand == SegmentKind::LeftArc ? mod_two_pi(heading_out - heading_in)
                                      : mod_two_pi(heading_in - heading_out);
}

}  // namespace

std::string word_name(Word w) {
  switch (w) {
    case Word::LSL: return "LSL";
    case Word::RSR: return "RSR";
    case Word::LSR: return "LSR";
    case Word::RSL: return "RSL";
    case Word::RLR: return "RLR";
    case Word::LRL: return "LRL";
  }
  return "?";
}

bool is_ccc(Word w) { return w == Word::RLR || w == Word::LRL; }

std::optional<CurvaturePath> chain_path(const OrientedPose& X, const OrientedPose& Y,
                                        const std::vector<ChainCircle>& circles,
                                        const CurvatureBound& k) {
  if (circles.empty()) return std::nullopt;
  const double r = k.radius();

  // Consecutive same-handed circles at the same center are one circle.
  std::vector<ChainCircle> chain;
  chain.reserve(circles.size());
  for (const ChainCircle& c : circles) {
    if (!chain.empty() && same_hand(chain.back().hand, c.hand) &&
        (c.center - chain.back().center).norm() < kGeomSlack) {
      continue;
    }
    chain.push_back(c);
  }

  std::vector<Tangent> joints;
  joints.reserve(chain.size() - 1);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    auto t = tangent_between(chain[i], chain[i + 1], r);
    if (!t) return std::nullopt;
    joints.push_back(*t);
  }

  CurvaturePath path{X, {}, k};
  double heading_in = X.theta;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const double heading_out = (i < joints.size()) ? joints[i].heading : Y.theta;
    const double sweep = arc_sweep(chain[i].hand, heading_in, heading_out);
    path.segments.push_back({chain[i].hand, sweep});
    if (i < joints.size()) {
      double len = joints[i].length;
      if (len < kSnapTol) len = 0.0;
      // Exact tangencies have no straight between the arcs.
      if (!chain[i + 1].tangent_to_prev) {
        path.segments.push_back(PathSegment::straight(len));
      }
      heading_in = heading_out;
    }
  }

  const ValidationReport report = validate(path, X, Y);
  if (!report.within(kChainCheckTol)) return std::nullopt;
  return path;
}

std::optional<CurvaturePath> solve_csc(const OrientedPose& X, const OrientedPose& Y,
                                       const CurvatureBound& k, Word w) {
  const TurnCenters cx = turn_centers(X, k);
  const TurnCenters cy = turn_centers(Y, k);
  ChainCircle first, last;
  switch (w) {
    case Word::LSL:
      first = {cx.left, SegmentKind::LeftArc};
      last = {cy.left, SegmentKind::LeftArc};
      break;
    case Word::RSR:
      first = {cx.right, SegmentKind::RightArc};
      last = {cy.right, SegmentKind::RightArc};
      break;
    case Word::LSR:
      first = {cx.left, SegmentKind::LeftArc};
      last = {cy.right, SegmentKind::RightArc};
      break;
    case Word::RSL:
      first = {cx.right, SegmentKind::RightArc};
      last = {cy.left, SegmentKind::LeftArc};
      break;
    default:
      return std::nullopt;
  }
  auto path = chain_path(X, Y, {first, last}, k);
  if (!path) return path;
  // A merged same-handed pair comes back as a lone arc; keep the three-part
  // word structure with zero-magnitude components.
  if (path->segments.size() == 1) {
    path->segments.push_back(PathSegment::straight(0.0));
    path->segments.push_back({last.hand, 0.0});
  }
  return path;
}

std::vector<CurvaturePath> solve_ccc_roots(const OrientedPose& X, const OrientedPose& Y,
                                           const CurvatureBound& k, Word w) {
  std::vector<CurvaturePath> roots;
  if (!is_ccc(w)) return roots;
  const double r = k.radius();
  const SegmentKind outer =
      (w == Word::RLR) ? SegmentKind::RightArc : SegmentKind::LeftArc;
  const SegmentKind middle =
      (w == Word::RLR) ? SegmentKind::LeftArc : SegmentKind::RightArc;
  const TurnCenters cx = turn_centers(X, k);
  const TurnCenters cy = turn_centers(Y, k);
  const Vec2 c1 = (outer == SegmentKind::RightArc) ? cx.right : cx.left;
  const Vec2 c2 = (outer == SegmentKind::RightArc) ? cy.right : cy.left;

  const Vec2 v = c2 - c1;
  const double dist = v.norm();
  if (dist > 4.0 * r + kGeomSlack) return roots;

  const double beta = std::acos(std::clamp(dist / (4.0 * r), -1.0, 1.0));
  const double phi = (dist > kSnapTol) ? v.angle() : 0.0;
  const int n_placements = (beta < kGeomSlack) ? 1 : 2;
  for (int i = 0; i < n_placements; ++i) {
    const double sign = (i == 0) ? 1.0 : -1.0;
    const Vec2 mid = c1 + unit_vector(phi + sign * beta) * (2.0 * r);
    auto path = chain_path(
        X, Y, {{c1, outer}, {mid, middle, true}, {c2, outer, true}}, k);
    if (path) roots.push_back(std::move(*path));
  }
  std::sort(roots.begin(), roots.end(), [](const CurvaturePath& a, const CurvaturePath& b) {
    return path_length(a) < path_length(b);
  });
  return roots;
}

Word slot_word(CandidateSlot slot) {
  switch (slot) {
    case CandidateSlot::kLsl: return Word::LSL;
    case CandidateSlot::kRsr: return Word::RSR;
    case CandidateSlot::kLsr: return Word::LSR;
    case CandidateSlot::kRsl: return Word::RSL;
    case CandidateSlot::kRlrShort:
    case CandidateSlot::kRlrLong: return Word::RLR;
    case CandidateSlot::kLrlShort:
    case CandidateSlot::kLrlLong: return Word::LRL;
  }
  return Word::LSL;
}

CandidateTable candidate_table(const OrientedPose& X, const OrientedPose& Y,
                               const CurvatureBound& k) {
  CandidateTable table;
  auto put = [&](CandidateSlot slot, std::optional<CurvaturePath> path) {
    if (!path) return;
    CandidateEntry& e = table.at(slot);
    e.length = path_length(*path);
    e.path = std::move(path);
  };
  put(CandidateSlot::kLsl, solve_csc(X, Y, k, Word::LSL));
  put(CandidateSlot::kRsr, solve_csc(X, Y, k, Word::RSR));
  put(CandidateSlot::kLsr, solve_csc(X, Y, k, Word::LSR));
  put(CandidateSlot::kRsl, solve_csc(X, Y, k, Word::RSL));
  auto rlr = solve_ccc_roots(X, Y, k, Word::RLR);
  if (!rlr.empty()) put(CandidateSlot::kRlrShort, rlr.front());
  if (rlr.size() > 1) put(CandidateSlot::kRlrLong, rlr.back());
  auto lrl = solve_ccc_roots(X, Y, k, Word::LRL);
  if (!lrl.empty()) put(CandidateSlot::kLrlShort, lrl.front());
  if (lrl.size() > 1) put(CandidateSlot::kLrlLong, lrl.back());
  return table;
}

ShortestResult shortest(const OrientedPose& X, const OrientedPose& Y,
                        const CurvatureBound& k) {
  if (X == Y) throw DegenerateInput();
  const CandidateTable table = candidate_table(X, Y, k);
  const CandidateEntry* best = nullptr;
  CandidateSlot best_slot = CandidateSlot::kLsl;
  for (int i = 0; i < kCandidateSlots; ++i) {
    const auto slot = static_cast<CandidateSlot>(i);
    const CandidateEntry& e = table.at(slot);
    if (!e.exists()) continue;
    if (best == nullptr || e.length < best->length) {
      best = &e;
      best_slot = slot;
    }
  }
  if (best == nullptr) {
    // Unreachable: LSL and RSR always admit a construction.
    throw Error("no candidate path found");
  }
  return {*best->path, slot_word(best_slot), best->length};
}

}  // namespace curvebound
