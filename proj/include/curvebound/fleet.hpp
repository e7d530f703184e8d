#pragma once

#include <string>
#include <vector>

#include "curvebound/elongation.hpp"
#include "curvebound/feasibility.hpp"
#include "curvebound/geometry.hpp"

namespace curvebound {

struct Vehicle {
  int id = 0;
  OrientedPose start;
  OrientedPose goal;
};

struct FleetProblem {
  CurvatureBound bound;
  std::vector<Vehicle> vehicles;
};

struct VehiclePlan {
  int id = 0;
  FeasibleLengthSet feasible;
  CurvaturePath path;
  StrategyTag strategy = StrategyTag::kParallelInsert;
  double length = 0.0;
};

struct FleetPlan {
  double t_m = 0.0;  // common path length, arrival time at unit speed
  std::vector<VehiclePlan> vehicles;
};

// Minimum-time simultaneous arrival: the smallest length contained in every
// vehicle's feasible set, found exactly by sweeping the set breakpoints, then
// each vehicle elongated to it.
FleetPlan plan_formation(const FleetProblem& problem, double tol = kLengthTol);

struct ArrivalRow {
  int id = 0;
  double length = 0.0;
  double max_endpoint_error = 0.0;
};

std::vector<ArrivalRow> arrival_report(const FleetProblem& problem,
                                       const FleetPlan& plan);

}  // namespace curvebound
