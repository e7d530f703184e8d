#include "curvebound/fleet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvebound/errors.hpp"

namespace curvebound {

FleetPlan plan_formation(const FleetProblem& problem, double tol) {
  if (problem.vehicles.empty()) throw std::invalid_argument("empty fleet");

  FleetPlan plan;
  plan.vehicles.reserve(problem.vehicles.size());
  std::vector<FeasibleLengthSet> sets;
  sets.reserve(problem.vehicles.size());
  for (const Vehicle& v : problem.vehicles) {
    sets.push_back(feasible_set(v.start, v.goal, problem.bound));
  }

  // The minimum of the intersection is attained at one of the interval
  // starts, so sweeping the breakpoints ascending is exact.
  std::vector<double> breakpoints;
  for (const FeasibleLengthSet& set : sets) {
    breakpoints.push_back(set.min_length);
    if (set.gap) {
      breakpoints.push_back(set.gap->l1);
      breakpoints.push_back(set.gap->l2);
    }
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  double t_m = -1.0;
  for (double candidate : breakpoints) {
    const bool ok = std::all_of(sets.begin(), sets.end(), [&](const auto& set) {
      return contains(set, candidate);
    });
    if (ok) {
      t_m = candidate;
      break;
    }
  }
  if (t_m < 0.0) {
    // Unreachable: every set contains [max breakpoints, inf).
    throw Error("feasible sets have empty intersection");
  }
  plan.t_m = t_m;

  for (std::size_t i = 0; i < problem.vehicles.size(); ++i) {
    const Vehicle& v = problem.vehicles[i];
    ElongationResult res = elongate_to(
        {v.start, v.goal, problem.bound, t_m, tol});
    VehiclePlan vp;
    vp.id = v.id;
    vp.feasible = sets[i];
    vp.length = path_length(res.path);
    vp.path = std::move(res.path);
    vp.strategy = res.strategy;
    plan.vehicles.push_back(std::move(vp));
  }
  return plan;
}

std::vector<ArrivalRow> arrival_report(const FleetProblem& problem,
                                       const FleetPlan& plan) {
  std::vector<ArrivalRow> rows;
  rows.reserve(plan.vehicles.size());
  for (std::size_t i = 0; i < plan.vehicles.size(); ++i) {
    const VehiclePlan& vp = plan.vehicles[i];
    const Vehicle& v = problem.vehicles.at(i);
    const ValidationReport report = validate(vp.path, v.start, v.goal);
    rows.push_back({vp.id, report.length,
                    std::max(report.endpoint_position_error,
                             report.endpoint_heading_error)});
  }
  return rows;
}

}  // namespace curvebound
