#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "curvebound/geometry.hpp"

namespace curvebound {

// The six canonical words. Order is the deterministic tie-break order used by
// shortest(). Substrings appear as words with zero-magnitude components.
enum class Word { LSL, RSR, LSR, RSL, RLR, LRL };

std::string word_name(Word w);
bool is_ccc(Word w);

// One tangent circle of a chain construction. hand must be LeftArc or
// RightArc. When tangent_to_prev is set, the joint with the previous circle
// is an exact tangency (center distance 2/kappa by construction) and the
// connecting straight is emitted with length exactly zero.
struct ChainCircle {
  Vec2 center;
  SegmentKind hand = SegmentKind::LeftArc;
  bool tangent_to_prev = false;
};

// Builds the path that starts at X on circles.front(), follows each circle in
// turn with the straight tangent dictated by the handedness pair (outer for
// equal hands, inner for a flip), and leaves circles.back() at Y. The first
// and last circles must be turn circles of X and Y with matching handedness.
// Returns nothing when an inner tangent does not exist or the construction
// fails to join the endpoints.
std::optional<CurvaturePath> chain_path(const OrientedPose& X, const OrientedPose& Y,
                                        const std::vector<ChainCircle>& circles,
                                        const CurvatureBound& k);

// Solves one CSC word (LSL, RSR, LSR, RSL) between X and Y. Absence is a
// value: inner-tangent words need turn-center distance >= 2/kappa.
std::optional<CurvaturePath> solve_csc(const OrientedPose& X, const OrientedPose& Y,
                                       const CurvatureBound& k, Word w);

// Solves one CCC word (RLR, LRL). Both placements of the middle circle are
// enumerated; they exist iff the same-handed center distance is <= 4/kappa.
// The result is sorted ascending by length.
std::vector<CurvaturePath> solve_ccc_roots(const OrientedPose& X, const OrientedPose& Y,
                                           const CurvatureBound& k, Word w);

enum class CandidateSlot : int {
  kLsl = 0,
  kRsr,
  kLsr,
  kRsl,
  kRlrShort,
  kRlrLong,
  kLrlShort,
  kLrlLong,
};
inline constexpr int kCandidateSlots = 8;

struct CandidateEntry {
  double length = std::numeric_limits<double>::infinity();
  std::optional<CurvaturePath> path;

  bool exists() const { return path.has_value(); }
};

// All eight candidate lengths between a pose pair: the four CSC words and the
// short and long roots of each CCC family.
struct CandidateTable {
  std::array<CandidateEntry, kCandidateSlots> entries;

  const CandidateEntry& at(CandidateSlot slot) const {
    return entries[static_cast<int>(slot)];
  }
  CandidateEntry& at(CandidateSlot slot) { return entries[static_cast<int>(slot)]; }
};

Word slot_word(CandidateSlot slot);

CandidateTable candidate_table(const OrientedPose& X, const OrientedPose& Y,
                               const CurvatureBound& k);

struct ShortestResult {
  CurvaturePath path;
  Word word = Word::LSL;
  double length = 0.0;
};

// Shortest curvature-bounded path between two distinct oriented points.
// Throws DegenerateInput when X == Y exactly. Ties are broken by the Word
// enumeration order.
ShortestResult shortest(const OrientedPose& X, const OrientedPose& Y,
                        const CurvatureBound& k);

}  // namespace curvebound
