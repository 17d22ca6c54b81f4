#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tangentplan/geometry.hpp"
#include "tangentplan/scenario.hpp"

namespace tangentplan {

/// How an exact tie after the length rule is broken.
enum class TieBreak {
  Lexicographic,  // smaller waypoint (x, then y) wins
  LeftFirst,      // the candidate left of O->D wins
};

struct PlannerConfig {
  std::optional<double> eps;          // default 1e-9 x field diagonal
  std::optional<int> max_iterations;  // default 50 x obstacle count, at least 1
  TieBreak tie_break = TieBreak::Lexicographic;
  bool prefer_in_bounds = true;  // a waypoint inside the field beats one outside it
};

/// PlannerConfig with every default filled in.
struct SearchSettings {
  double eps = 0.0;
  int max_iterations = 1;
  TieBreak tie_break = TieBreak::Lexicographic;
  std::optional<Bounds> bounds;  // set when in-field waypoints are preferred
};

SearchSettings resolve(const PlannerConfig& config, const Scenario& scenario);

struct SubPathChoice {
  int index = 0;  // 0 = first candidate, 1 = second
  int rule = 0;   // deciding rule, 1..4
  bool tie_break = false;
};

/// Applies the four priority rules in order:
///   1. the origin-tangent avoids the most recently avoided obstacle,
///   2. the origin-tangent hits fewer obstacles,
///   3. the destination-tangent hits fewer obstacles,
///   4. the sub-path is shorter.
/// A rule decides only when it separates the candidates. If rule 4 ties
/// too (within eps), `tie_break` picks and the result reports rule 4 with
/// tie_break set.
SubPathChoice select_subpath(const SubPathCandidate& a, const SubPathCandidate& b,
                             std::span<const int> avoided,
                             std::span<const EllipseObstacle> obstacles, double eps,
                             TieBreak tie_break = TieBreak::Lexicographic);

/// One obstacle-avoidance step of the search loop.
struct TraceRecord {
  Point2 origin;
  Point2 destination;
  int obstacle_id = -1;  // first-collided obstacle on O-D
  std::array<SubPathCandidate, 2> candidates{};  // [left of O->D, right of O->D]
  std::array<bool, 2> usable{true, true};
  std::array<std::size_t, 2> cluster_size{1, 1};
  int chosen = 0;
  int rule = 0;  // 0: the only usable (or only in-field) candidate; 1..4: priority rule
  bool tie_break = false;
  bool perturbed = false;
  Point2 waypoint;
  bool determined = false;  // waypoint went to the determined list
  std::optional<int> waypoint_obstacle_id;  // first-collided obstacle on O-T
  std::size_t determined_count = 0;         // determined waypoints before the step
};

struct PathPlan {
  std::vector<Point2> route;
  double length = 0.0;
  std::vector<TraceRecord> trace;
  int iterations = 0;
  std::vector<int> avoided;  // obstacle ids in the order they were avoided
};

/// Target-guided tangent-intersection search between two points over a fixed
/// obstacle set. Throws PlanningFailed or DegenerateTangency.
PathPlan plan_between(Point2 start, Point2 end, std::span<const EllipseObstacle> obstacles,
                      const SearchSettings& settings);

/// Offline planner over every obstacle of the scenario (pop-ups excluded).
/// Throws InvalidScenario, PlanningFailed or DegenerateTangency.
PathPlan plan_static(const Scenario& scenario, const PlannerConfig& config = {});

}  // namespace tangentplan
