#pragma once

#include <stdexcept>
#include <string>

namespace curvebound {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Start and goal coincide as oriented points.
class DegenerateInput : public Error {
 public:
  explicit DegenerateInput(const std::string& what = "start and goal poses coincide")
      : Error(what) {}
};

// Operation requires an endpoint pair whose shortest path is CSC with no
// unbounded-elongation membership.
class NotInNablaO : public Error {
 public:
  explicit NotInNablaO(const std::string& what = "endpoint pair has no length gap")
      : Error(what) {}
};

class NoParallelTangents : public Error {
 public:
  explicit NoParallelTangents(const std::string& what = "path has no arc of at least pi")
      : Error(what) {}
};

class SegmentTooShort : public Error {
 public:
  explicit SegmentTooShort(const std::string& what = "straight segment too short")
      : Error(what) {}
};

class NotAStraight : public Error {
 public:
  explicit NotAStraight(const std::string& what = "segment is not a straight")
      : Error(what) {}
};

// Requested length lies outside the feasible length set. Carries the set
// bounds so callers can report what is achievable.
class InfeasibleLength : public Error {
 public:
  InfeasibleLength(double target, double min_length, bool has_gap, double gap_low,
                   double gap_high);

  double target = 0.0;
  double min_length = 0.0;
  bool has_gap = false;
  double gap_low = 0.0;
  double gap_high = 0.0;
};

class ToleranceNotMet : public Error {
 public:
  ToleranceNotMet(const std::string& what, double achieved_length)
      : Error(what), achieved(achieved_length) {}

  double achieved = 0.0;
};

// Oracle search resolution too coarse to witness a solution.
class NoSolutionFound : public Error {
 public:
  explicit NoSolutionFound(const std::string& what = "search resolution too coarse")
      : Error(what) {}
};

}  // namespace curvebound
