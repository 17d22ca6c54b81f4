#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tangentplan/geometry.hpp"

namespace tangentplan {

/// Axis-aligned world rectangle [0, width] x [0, height], km.
struct Bounds {
  double width = 100.0;
  double height = 100.0;

  double diagonal() const { return std::hypot(width, height); }
  bool contains(Point2 p) const {
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= width && p.y <= height;
  }
};

/// An obstacle that is absent from the offline picture. With a trigger time
/// it exists from that simulation time on (time = km flown at unit speed);
/// without one it exists from the start but is only learned when sensed.
struct PopupEvent {
  std::optional<double> trigger_time;
  EllipseObstacle obstacle;
};

struct Scenario {
  std::string name;
  Bounds bounds;
  Point2 start;
  Point2 end;
  double safety_margin = 0.0;
  std::vector<EllipseObstacle> obstacles;
  std::vector<bool> initially_known;
  std::vector<PopupEvent> popups;

  double default_eps() const { return 1e-9 * bounds.diagonal(); }
};

/// Checks the scenario invariants: start/end inside the bounds and strictly
/// outside every inflated obstacle (pop-ups included), unique ids, one known
/// flag per obstacle. Throws Error(InvalidScenario).
void validate(const Scenario& scenario);

std::string to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

// Small file helpers shared by the harness.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace tangentplan
