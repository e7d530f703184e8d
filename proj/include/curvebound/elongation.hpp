#pragma once

#include <optional>
#include <string>

#include "curvebound/feasibility.hpp"
#include "curvebound/geometry.hpp"

namespace curvebound {

struct ElongationRequest {
  OrientedPose start;
  OrientedPose goal;
  CurvatureBound bound;
  double target_length = 0.0;
  double tol = kLengthTol;
};

// Mechanism that produced a synthesized path, recorded for auditability.
enum class StrategyTag {
  kParallelInsert,
  kWaveDeform,
  kDiskPush,
  kLoopThenParallel,
  kComposite,
};

std::string strategy_name(StrategyTag tag);

struct ElongationResult {
  CurvaturePath path;
  StrategyTag strategy = StrategyTag::kParallelInsert;
};

// Splits an arc of at least pi at two opposite-tangent points and inserts a
// straight of length delta at each, translating only the portion in between.
// End pose is unchanged and length grows by exactly 2*delta. Throws
// NoParallelTangents when no such arc exists.
CurvaturePath insert_parallel_extension(const CurvaturePath& path, double delta);

// Replaces a chord of length 4*sin(alpha)/kappa inside a straight segment by
// the arc triple [alpha, 2*alpha opposite, alpha], preserving endpoints and
// adding (4*alpha - 4*sin(alpha))/kappa of length. At alpha = pi/2 the middle
// arc is a semicircle, so parallel insertion applies afterwards.
CurvaturePath wave_deform(const CurvaturePath& path, std::size_t straight_index,
                          double alpha);

// Closed-form elongation of the wave deformation.
double wave_elongation(double alpha, const CurvatureBound& k);

// One-parameter deformation of the shortest path of a gapped pair, pressing a
// radius-1/kappa disk against its straight segment. lambda = 0 reproduces the
// shortest path; lambda = 1 reaches the larger short CCC root, the lower gap
// bound. Throws NotInNablaO when the pair has no gap.
CurvaturePath disk_push_family(const OrientedPose& X, const OrientedPose& Y,
                               const CurvatureBound& k, double lambda);

// Prepends one full turn at the start pose: length grows by 2*pi/kappa, the
// end pose is unchanged, and the result always admits parallel insertion.
CurvaturePath full_loop_insert(const CurvaturePath& path);

// Synthesizes a validated path whose length matches the request within tol.
// Throws InfeasibleLength when the target lies outside the feasible length
// set and ToleranceNotMet when the numeric search stalls.
ElongationResult elongate_to(const ElongationRequest& req);

}  // namespace curvebound
