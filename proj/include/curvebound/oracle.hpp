#pragma once

#include <array>
#include <optional>

#include "curvebound/geometry.hpp"

namespace curvebound {

struct OracleConfig {
  // Coarse grid step for arc parameters, in radians; straights use a
  // proportional step over their own range.
  double grid_resolution = kTwoPi / 256.0;
  // Maximum segment count searched by oracle_exists_length.
  int families = 5;
  // Local refinement iterations per candidate cell.
  int refine_iters = 200;
  // Residual below which a refined candidate counts as a solution.
  double accept_tol = 1e-7;
};

// Minimum length over all three-segment arc/straight families joining X to Y,
// found by dense grid search over the free parameters followed by local
// refinement. Independent of the closed-form solvers; used to check them.
// Throws NoSolutionFound when no family closes at the configured resolution.
double oracle_shortest(const OrientedPose& X, const OrientedPose& Y,
                       const CurvatureBound& k, const OracleConfig& cfg = {});

// Same search restricted to one segment-kind pattern.
std::optional<double> oracle_pattern_min(const OrientedPose& X, const OrientedPose& Y,
                                         const CurvatureBound& k,
                                         const std::array<SegmentKind, 3>& pattern,
                                         const OracleConfig& cfg = {});

// Searches families of up to cfg.families segments for a path of length
// exactly s joining X to Y. A true result is witnessed by a validated path;
// a false result is evidence at the configured resolution, not proof.
bool oracle_exists_length(const OrientedPose& X, const OrientedPose& Y,
                          const CurvatureBound& k, double s,
                          const OracleConfig& cfg = {});

// As above, returning the witness path when one is found.
std::optional<CurvaturePath> oracle_find_length(const OrientedPose& X,
                                                const OrientedPose& Y,
                                                const CurvatureBound& k, double s,
                                                const OracleConfig& cfg = {});

}  // namespace curvebound
