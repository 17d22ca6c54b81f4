#include "tangentplan/constraints.hpp"

#include <algorithm>
#include <limits>

#include "tangentplan/error.hpp"

namespace tangentplan {

void validate(const ConstraintLimits& limits) {
  if (!(limits.max_range > 0.0) || !(limits.min_leg > 0.0) || !(limits.min_turn_radius > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "constraint limits must be strictly positive");
  }
}

double total_length(std::span<const Point2> waypoints) {
  double sum = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) sum += distance(waypoints[i - 1], waypoints[i]);
  return sum;
}

double shortest_leg(std::span<const Point2> waypoints) {
  if (waypoints.size() < 2) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    best = std::min(best, distance(waypoints[i - 1], waypoints[i]));
  }
  return best;
}

ConstraintReport check(const PathPlan& plan, const SmoothedCurve& curve,
                       const ConstraintLimits& limits) {
  validate(limits);
  ConstraintReport r;
  r.total_length = total_length(plan.route);
  r.range_ok = r.total_length <= limits.max_range;
  r.min_leg = shortest_leg(plan.route);
  r.leg_ok = r.min_leg >= limits.min_leg;
  r.max_curvature = curve.samples.size() >= 3 ? max_curvature(curve) : 0.0;
  r.turn_ok = r.max_curvature <= 1.0 / limits.min_turn_radius;
  return r;
}

}  // namespace tangentplan
