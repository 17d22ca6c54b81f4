#pragma once

#include <span>

#include "tangentplan/geometry.hpp"
#include "tangentplan/planner_static.hpp"
#include "tangentplan/smoothing.hpp"

namespace tangentplan {

struct ConstraintLimits {
  double max_range = 300.0;     // km
  double min_leg = 0.5;         // km
  double min_turn_radius = 0.2; // km
};

struct ConstraintReport {
  double total_length = 0.0;
  bool range_ok = true;
  double min_leg = 0.0;
  bool leg_ok = true;
  double max_curvature = 0.0;
  bool turn_ok = true;
};

/// Throws InvalidArgument unless every limit is strictly positive.
void validate(const ConstraintLimits& limits);

/// Sum of Euclidean leg lengths; 0 for fewer than two waypoints.
double total_length(std::span<const Point2> waypoints);

/// Shortest leg of the raw route; 0 for fewer than two waypoints.
double shortest_leg(std::span<const Point2> waypoints);

/// Range and leg length are measured on the raw route, turning on the
/// smoothed curve. Nothing is enforced; the report only flags.
ConstraintReport check(const PathPlan& plan, const SmoothedCurve& curve,
                       const ConstraintLimits& limits = {});

}  // namespace tangentplan
