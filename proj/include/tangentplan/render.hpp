#pragma once

#include <span>
#include <string>

#include "tangentplan/scenario.hpp"
#include "tangentplan/smoothing.hpp"

namespace tangentplan {

/// SVG drawing of a scenario: one <ellipse> per obstacle (grey initially
/// unknown, yellow known, red pop-up), the raw route as a <polyline>, the
/// smoothed curve as a <path> and stars at start and end. Output depends only
/// on the inputs.
std::string render_svg(const Scenario& scenario, std::span<const Point2> route = {},
                       const SmoothedCurve* curve = nullptr);

/// Writes render_svg() output; throws Error(Io) on failure.
void render_svg_file(const std::string& path, const Scenario& scenario,
                     std::span<const Point2> route = {}, const SmoothedCurve* curve = nullptr);

}  // namespace tangentplan
