#pragma once

#include <span>

#include "tangentplan/geometry.hpp"
#include "tangentplan/planner_static.hpp"

namespace tangentplan::detail {

/// Builds both sub-paths around the first-collided obstacle and picks the
/// waypoint T. Candidates whose waypoint lands inside another obstacle are
/// re-derived against the growing cluster of obstacles containing it. On a
/// degenerate configuration D is nudged by eps * 1e3 across O-D and the step
/// retried once.
///
/// Fills origin, destination, obstacle_id, candidates, usable, cluster_size,
/// chosen, rule, tie_break, perturbed and waypoint. Throws PlanningFailed
/// when neither side yields a usable waypoint and DegenerateTangency when the
/// retry fails too.
TraceRecord avoid_obstacle(Point2 origin, Point2 destination, const Collision& hit,
                           std::span<const EllipseObstacle> obstacles,
                           std::span<const int> avoided, const SearchSettings& settings);

/// True when signed_margin(o, p) > threshold for every obstacle.
bool strictly_outside_all(Point2 p, std::span<const EllipseObstacle> obstacles, double threshold);

}  // namespace tangentplan::detail
