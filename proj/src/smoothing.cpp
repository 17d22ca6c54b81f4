#include "tangentplan/smoothing.hpp"

#include <algorithm>
#include <limits>

#include "tangentplan/error.hpp"

namespace tangentplan {

std::array<double, 4> basis(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "basis parameter outside [0, 1]");
  }
  const double t2 = t * t;
  const double t3 = t2 * t;
  return {(-t3 + 3.0 * t2 - 3.0 * t + 1.0) / 6.0, (3.0 * t3 - 6.0 * t2 + 4.0) / 6.0,
          (-3.0 * t3 + 3.0 * t2 + 3.0 * t + 1.0) / 6.0, t3 / 6.0};
}

Point2 spline_point(std::span<const Point2, 4> control, double t) {
  const auto w = basis(t);
  Point2 p{};
  for (int i = 0; i < 4; ++i) p = p + w[i] * control[i];
  return p;
}

double circumscribed_curvature(Point2 a, Point2 b, Point2 c) {
  const double ab = distance(a, b);
  const double bc = distance(b, c);
  const double ca = distance(c, a);
  const double denom = ab * bc * ca;
  if (denom == 0.0) return 0.0;
  return 2.0 * std::abs(cross(b - a, c - a)) / denom;
}

SmoothedCurve smooth(std::span<const Point2> waypoints, int samples_per_segment) {
  if (waypoints.size() < 2) {
    throw Error(ErrorCode::TooFewWaypoints, "smoothing needs at least two waypoints");
  }
  if (samples_per_segment < 2) {
    throw Error(ErrorCode::InvalidArgument, "samples_per_segment must be >= 2");
  }
  std::vector<Point2> control;
  control.reserve(waypoints.size() + 4);
  control.insert(control.end(), 2, waypoints.front());
  control.insert(control.end(), waypoints.begin(), waypoints.end());
  control.insert(control.end(), 2, waypoints.back());

  SmoothedCurve curve;
  curve.samples_per_segment = samples_per_segment;
  const std::size_t segments = control.size() - 3;
  curve.samples.reserve(segments * samples_per_segment + 1);
  for (std::size_t i = 0; i < segments; ++i) {
    const std::span<const Point2, 4> quad(control.data() + i, 4);
    for (int k = 0; k < samples_per_segment; ++k) {
      curve.samples.push_back(spline_point(quad, static_cast<double>(k) / samples_per_segment));
    }
  }
  curve.samples.push_back(
      spline_point(std::span<const Point2, 4>(control.data() + segments - 1, 4), 1.0));

  curve.curvature.assign(curve.samples.size(), 0.0);
  for (std::size_t i = 1; i + 1 < curve.samples.size(); ++i) {
    curve.curvature[i] =
        circumscribed_curvature(curve.samples[i - 1], curve.samples[i], curve.samples[i + 1]);
  }
  return curve;
}

double max_curvature(const SmoothedCurve& curve) {
  if (curve.samples.size() < 3) {
    throw Error(ErrorCode::TooFewSamples, "curvature needs at least three samples");
  }
  double best = 0.0;
  for (std::size_t i = 1; i + 1 < curve.samples.size(); ++i) {
    best = std::max(best, circumscribed_curvature(curve.samples[i - 1], curve.samples[i],
                                                  curve.samples[i + 1]));
  }
  return best;
}

double min_clearance(const SmoothedCurve& curve, std::span<const EllipseObstacle> obstacles) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : curve.samples) {
    for (const auto& o : obstacles) best = std::min(best, signed_margin(o, p));
  }
  return best;
}

}  // namespace tangentplan
