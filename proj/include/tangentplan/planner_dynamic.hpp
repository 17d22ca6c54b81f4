#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tangentplan/planner_static.hpp"
#include "tangentplan/scenario.hpp"

namespace tangentplan {

struct SensorModel {
  double range = 10.0;  // km
};

struct PerceptionEvent {
  std::size_t visit = 0;  // index into FlightLog::visited
  std::vector<int> ids;   // obstacles first seen there
};

struct ReplanEvent {
  Point2 position;                  // where the UAV was when it re-planned
  Segment conflict;                 // conflicting route segment
  std::size_t conflict_index = 0;   // index of the segment start in route_before
  std::vector<Point2> sub_route;    // spliced replacement, both ends included
  double elapsed_s = 0.0;           // wall-clock of the re-plan
  std::vector<Point2> route_before;
  std::vector<Point2> route_after;
};

/// Simulated execution record. Simulation time is the distance flown (unit
/// speed), so visit_times[i] is the time at which visited[i] was reached.
struct FlightLog {
  std::vector<Point2> visited;
  std::vector<double> visit_times;
  std::vector<PerceptionEvent> perception_events;
  std::vector<ReplanEvent> replan_events;
};

struct DynamicResult {
  PathPlan plan;
  FlightLog log;
};

/// Ground truth at simulation time t: every scenario obstacle plus the
/// pop-ups that exist by then.
std::vector<EllipseObstacle> active_obstacles(const Scenario& scenario,
                                              std::span<const PopupEvent> popups, double time);

/// Ids of obstacles whose inflated boundary is within the sensor range of
/// `position` (distance <= range). Obstacles are perceived whole.
std::vector<int> visible_set(Point2 position, const SensorModel& sensor,
                             std::span<const EllipseObstacle> obstacles);

/// Online planning in an initially empty map: perceive at every determined
/// waypoint, fly collision-free legs of at most `step` km, and avoid the
/// first-collided known obstacle with the same four rules as the offline
/// planner. Throws InvalidArgument (step <= 0 or range <= step),
/// InvalidScenario, PlanningFailed or DeadEnd.
DynamicResult plan_unknown(const Scenario& scenario, double step, const SensorModel& sensor,
                           const PlannerConfig& config = {});

/// Flies `offline` (planned over the initially known obstacles) in legs of at
/// most `step` km, sensing after every leg. When a newly perceived obstacle
/// blocks a remaining segment, that segment is re-planned over everything
/// known so far, from its start (the UAV's position for the segment being
/// flown) to its end waypoint, falling back to the end-point E.
DynamicResult replan_popup(const Scenario& scenario, const PathPlan& offline,
                           std::span<const PopupEvent> events, const SensorModel& sensor,
                           const PlannerConfig& config = {}, double step = 3.0);

/// The scenario restricted to initially known obstacles, without pop-ups.
Scenario offline_view(const Scenario& scenario);

}  // namespace tangentplan
