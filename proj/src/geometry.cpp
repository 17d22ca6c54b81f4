#include "tangentplan/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "tangentplan/error.hpp"

namespace tangentplan {

namespace {

// Root of the Eberly distance equation, bisection over [s0, s1].
double ellipse_distance_root(double r0, double z0, double z1, double g) {
  const double n0 = r0 * z0;
  double s0 = z1 - 1.0;
  double s1 = g < 0.0 ? 0.0 : std::hypot(n0, z1) - 1.0;
  double s = 0.0;
  for (int i = 0; i < 1100; ++i) {
    s = 0.5 * (s0 + s1);
    if (s == s0 || s == s1) break;
    const double ratio0 = n0 / (s + r0);
    const double ratio1 = z1 / (s + 1.0);
    const double gs = ratio0 * ratio0 + ratio1 * ratio1 - 1.0;
    if (gs > 0.0) {
      s0 = s;
    } else if (gs < 0.0) {
      s1 = s;
    } else {
      break;
    }
  }
  return s;
}

// Distance from (y0, y1), first quadrant, to the axis-aligned ellipse with
// semi-axes e0 >= e1.
double first_quadrant_distance(double e0, double e1, double y0, double y1) {
  if (y1 > 0.0) {
    if (y0 > 0.0) {
      const double z0 = y0 / e0;
      const double z1 = y1 / e1;
      const double g = z0 * z0 + z1 * z1 - 1.0;
      if (g == 0.0) return 0.0;
      const double r0 = (e0 / e1) * (e0 / e1);
      const double sbar = ellipse_distance_root(r0, z0, z1, g);
      const double x0 = r0 * y0 / (sbar + r0);
      const double x1 = y1 / (sbar + 1.0);
      return std::hypot(x0 - y0, x1 - y1);
    }
    return std::abs(y1 - e1);
  }
  const double numer0 = e0 * y0;
  const double denom0 = e0 * e0 - e1 * e1;
  if (numer0 < denom0) {
    const double xde0 = numer0 / denom0;
    const double x0 = e0 * xde0;
    const double x1 = e1 * std::sqrt(1.0 - xde0 * xde0);
    return std::hypot(x0 - y0, x1);
  }
  return std::abs(y0 - e0);
}

}  // namespace

EllipseObstacle::EllipseObstacle(int id, Point2 center, double semi_major, double semi_minor,
                                 double inclination, double safety_margin)
    : id_(id),
      center_(center),
      semi_major_(semi_major),
      semi_minor_(semi_minor),
      inclination_(inclination),
      safety_margin_(safety_margin) {
  if (!is_finite(center) || !std::isfinite(semi_major) || !std::isfinite(semi_minor) ||
      !std::isfinite(inclination) || !std::isfinite(safety_margin)) {
    throw Error(ErrorCode::InvalidArgument,
                "obstacle " + std::to_string(id) + ": non-finite parameter");
  }
  if (!(semi_minor > 0.0) || semi_major < semi_minor) {
    throw Error(ErrorCode::InvalidArgument,
                "obstacle " + std::to_string(id) + ": semi-axes must satisfy a >= b > 0");
  }
  if (safety_margin < 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "obstacle " + std::to_string(id) + ": negative safety margin");
  }
  inclination_ = std::fmod(inclination_, std::numbers::pi);
  if (inclination_ < 0.0) inclination_ += std::numbers::pi;
  cos_ = std::cos(inclination_);
  sin_ = std::sin(inclination_);
}

Point2 EllipseObstacle::to_unit(Point2 world) const {
  const Point2 d = world - center_;
  const double lx = d.x * cos_ + d.y * sin_;
  const double ly = d.y * cos_ - d.x * sin_;
  return {lx / effective_major(), ly / effective_minor()};
}

Point2 EllipseObstacle::from_unit(Point2 unit) const {
  return center_ + direction_from_unit(unit);
}

Point2 EllipseObstacle::direction_from_unit(Point2 unit_dir) const {
  const double lx = unit_dir.x * effective_major();
  const double ly = unit_dir.y * effective_minor();
  return {lx * cos_ - ly * sin_, lx * sin_ + ly * cos_};
}

double signed_margin(const EllipseObstacle& obs, Point2 p) {
  const Point2 u = obs.to_unit(p);
  return u.x * u.x + u.y * u.y - 1.0;
}

double boundary_distance(const EllipseObstacle& obs, Point2 p) {
  if (signed_margin(obs, p) <= 0.0) return 0.0;
  const double a = obs.effective_major();
  const double b = obs.effective_minor();
  if (a == b) return std::max(0.0, distance(p, obs.center()) - a);
  const Point2 u = obs.to_unit(p);
  return first_quadrant_distance(a, b, std::abs(u.x * a), std::abs(u.y * b));
}

std::optional<double> segment_collides(const EllipseObstacle& obs, const Segment& s,
                                       double eps) {
  const Point2 u0 = obs.to_unit(s.p);
  const Point2 d = obs.to_unit(s.q) - u0;
  // margin(t) = qa t^2 + qb t + qc
  const double qa = dot(d, d);
  const double qb = 2.0 * dot(u0, d);
  const double qc = dot(u0, u0) - 1.0;
  if (qa == 0.0) {
    if (qc < -eps) return 0.0;
    return std::nullopt;
  }
  const double t_min = std::clamp(-qb / (2.0 * qa), 0.0, 1.0);
  const double g_min = (qa * t_min + qb) * t_min + qc;
  if (!(g_min < -eps)) return std::nullopt;
  if (qc <= 0.0) return 0.0;
  const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
  const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
  const double r1 = q / qa;
  const double r2 = qc / q;
  return std::clamp(std::min(r1, r2), 0.0, 1.0);
}

std::optional<Collision> first_collided(const Segment& s,
                                        std::span<const EllipseObstacle> obstacles, double eps) {
  std::optional<Collision> best;
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const auto t = segment_collides(obstacles[i], s, eps);
    if (!t) continue;
    const int id = obstacles[i].id();
    if (!best || *t < best->entry || (*t == best->entry && id < best->id)) {
      best = Collision{i, id, *t};
    }
  }
  return best;
}

int count_collisions(const Segment& s, std::span<const EllipseObstacle> obstacles, double eps) {
  int n = 0;
  for (const auto& obs : obstacles) {
    if (segment_collides(obs, s, eps)) ++n;
  }
  return n;
}

std::array<Point2, 2> tangent_points(const EllipseObstacle& obs, Point2 p) {
  const Point2 u = obs.to_unit(p);
  const double r2 = dot(u, u);
  if (!(r2 - 1.0 > 0.0)) {
    throw Error(ErrorCode::PointInsideObstacle,
                "point is not strictly outside obstacle " + std::to_string(obs.id()));
  }
  // Polar line u.x X + u.y Y = 1 meets the unit circle at
  // (u +- perp(u) sqrt(|u|^2 - 1)) / |u|^2.
  const double h = std::sqrt(r2 - 1.0);
  const Point2 perp{-u.y, u.x};
  const Point2 t1 = (1.0 / r2) * (u + h * perp);
  const Point2 t2 = (1.0 / r2) * (u - h * perp);
  return {obs.from_unit(t1), obs.from_unit(t2)};
}

Point2 ray_intersection(Point2 origin, Point2 origin_dir, Point2 destination,
                        Point2 destination_dir) {
  const double denom = cross(origin_dir, destination_dir);
  const double scale = norm(origin_dir) * norm(destination_dir);
  if (!(std::abs(denom) > 1e-12 * scale)) {
    throw Error(ErrorCode::DegenerateTangency, "paired tangents are parallel");
  }
  const Point2 w = destination - origin;
  const double s = cross(w, destination_dir) / denom;
  const double t = cross(w, origin_dir) / denom;
  if (!(s > 0.0) || !(t > 0.0)) {
    throw Error(ErrorCode::DegenerateTangency, "paired tangents meet behind an apex");
  }
  const Point2 f = origin + s * origin_dir;
  if (!is_finite(f)) {
    throw Error(ErrorCode::DegenerateTangency, "tangent intersection is not finite");
  }
  return f;
}

SubPathCandidate make_candidate(Point2 origin, Point2 waypoint, Point2 destination) {
  SubPathCandidate c;
  c.waypoint = waypoint;
  c.origin_leg = {origin, waypoint};
  c.destination_leg = {waypoint, destination};
  c.length = distance(origin, waypoint) + distance(waypoint, destination);
  return c;
}

std::array<SubPathCandidate, 2> sub_paths(Point2 origin, Point2 destination,
                                          const EllipseObstacle& obs) {
  const auto from_origin = tangent_points(obs, origin);
  const auto from_destination = tangent_points(obs, destination);
  const Point2 c = obs.center();

  // Order each tangency pair so that element 0 keeps the obstacle on the
  // right of travel (the pass left of O->D when O-D crosses the obstacle).
  auto split = [&](const std::array<Point2, 2>& pts, Point2 apex, double sense) {
    const double s0 = sense * cross(pts[0] - apex, c - apex);
    const double s1 = sense * cross(pts[1] - apex, c - apex);
    if (!(s0 * s1 < 0.0)) {
      throw Error(ErrorCode::DegenerateTangency,
                  "tangents of obstacle " + std::to_string(obs.id()) + " do not separate");
    }
    return s0 < 0.0 ? std::array<Point2, 2>{pts[0], pts[1]}
                    : std::array<Point2, 2>{pts[1], pts[0]};
  };
  const auto o = split(from_origin, origin, 1.0);
  const auto d = split(from_destination, destination, -1.0);

  std::array<SubPathCandidate, 2> out;
  for (int k = 0; k < 2; ++k) {
    const Point2 f = ray_intersection(origin, o[k] - origin, destination, d[k] - destination);
    out[k] = make_candidate(origin, f, destination);
  }
  return out;
}

SubPathCandidate side_candidate(Point2 origin, Point2 destination,
                                std::span<const EllipseObstacle* const> cluster, Side side) {
  if (cluster.empty()) {
    throw Error(ErrorCode::InvalidArgument, "side_candidate: empty cluster");
  }
  const double sgn = static_cast<double>(static_cast<int>(side));
  const Point2 od = destination - origin;
  const Point2 dod = origin - destination;

  // Signed turning angle from the base direction, positive toward `side`.
  auto origin_angle = [&](Point2 t) {
    const Point2 v = t - origin;
    return sgn * std::atan2(cross(od, v), dot(od, v));
  };
  auto destination_angle = [&](Point2 t) {
    const Point2 v = t - destination;
    return -sgn * std::atan2(cross(dod, v), dot(dod, v));
  };

  double best_o = -std::numeric_limits<double>::infinity();
  double best_d = best_o;
  Point2 tangent_o{};
  Point2 tangent_d{};
  for (const EllipseObstacle* obs : cluster) {
    for (Point2 t : tangent_points(*obs, origin)) {
      const double a = origin_angle(t);
      if (a > best_o) {
        best_o = a;
        tangent_o = t;
      }
    }
    for (Point2 t : tangent_points(*obs, destination)) {
      const double a = destination_angle(t);
      if (a > best_d) {
        best_d = a;
        tangent_d = t;
      }
    }
  }
  if (!(best_o > 0.0) || !(best_d > 0.0)) {
    throw Error(ErrorCode::DegenerateTangency, "cluster does not block the line O-D");
  }
  const Point2 f =
      ray_intersection(origin, tangent_o - origin, destination, tangent_d - destination);
  return make_candidate(origin, f, destination);
}

}  // namespace tangentplan
