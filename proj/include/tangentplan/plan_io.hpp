#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tangentplan/constraints.hpp"
#include "tangentplan/planner_dynamic.hpp"
#include "tangentplan/planner_static.hpp"
#include "tangentplan/smoothing.hpp"

namespace tangentplan {

/// Everything written to a plan file.
struct PlanOutput {
  PathPlan plan;
  SmoothedCurve curve;
  ConstraintReport constraints;
  double curve_min_margin = 0.0;
  bool curve_clear = true;
  std::optional<double> time_s;     // omitted (null) unless timing was requested
  std::optional<FlightLog> flight;  // online modes only
  bool include_latency = false;     // write replan latencies (wall-clock)
};

/// Smooths the route, checks constraints and the curve's clearance against
/// `obstacles` with tolerance eps.
PlanOutput assemble_output(PathPlan plan, std::span<const EllipseObstacle> obstacles, double eps,
                           int samples_per_segment, const ConstraintLimits& limits);

/// "ok", or "curve_clearance_violated" when a smoothed sample penetrates an
/// obstacle deeper than eps.
std::string status_of(const PlanOutput& out);

/// Byte-stable JSON: {route, length_km, time_s, iterations, trace,
/// constraints, status[, flight]}.
std::string to_json(const PlanOutput& out);

/// Route and smoothing sample count of a plan file.
struct PlanSummary {
  std::vector<Point2> route;
  int samples_per_segment = 20;
};
PlanSummary plan_summary_from_json(const std::string& text);

}  // namespace tangentplan
