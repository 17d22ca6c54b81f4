#pragma once

#include <array>
#include <span>
#include <vector>

#include "tangentplan/geometry.hpp"

namespace tangentplan {

/// Densely sampled clamped uniform cubic B-spline through a waypoint route.
struct SmoothedCurve {
  std::vector<Point2> samples;
  std::vector<double> curvature;  // 1/km, one per sample, 0 at the ends
  int samples_per_segment = 20;
};

/// Uniform cubic B-spline basis weights (G0, G1, G2, G3) at t in [0, 1].
/// Throws InvalidArgument outside that range.
std::array<double, 4> basis(double t);

/// Curve point of one control quadruple at parameter t.
Point2 spline_point(std::span<const Point2, 4> control, double t);

/// Curvature of the circle through three points; 0 for collinear or
/// coincident points.
double circumscribed_curvature(Point2 a, Point2 b, Point2 c);

/// The route's first and last waypoints are each used three times as control
/// points, so the curve starts at the first waypoint and ends at the last.
/// Throws TooFewWaypoints for fewer than two waypoints and InvalidArgument
/// for samples_per_segment < 2.
SmoothedCurve smooth(std::span<const Point2> waypoints, int samples_per_segment = 20);

/// Largest discrete curvature over interior sample triples. Throws
/// TooFewSamples for fewer than three samples.
double max_curvature(const SmoothedCurve& curve);

/// Smallest signed margin of any sample against any obstacle.
double min_clearance(const SmoothedCurve& curve, std::span<const EllipseObstacle> obstacles);

}  // namespace tangentplan
