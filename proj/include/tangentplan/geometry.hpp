#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace tangentplan {

/// A point in the planning plane, coordinates in km.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Segment {
  Point2 p;
  Point2 q;

  double length() const { return distance(p, q); }
  Point2 at(double t) const { return p + t * (q - p); }
};

/// Elliptical obstacle inflated by a safety margin. All membership queries
/// run against the inflated ellipse with semi-axes (a + r_safe, b + r_safe).
///
/// Queries are evaluated in a normalized frame in which the inflated ellipse
/// becomes the unit circle: translate by -center, rotate by -inclination and
/// divide each axis by its inflated semi-axis.
class EllipseObstacle {
 public:
  /// Throws Error(InvalidArgument) unless a >= b > 0, r_safe >= 0 and all
  /// values are finite. The inclination is reduced modulo pi into [0, pi).
  EllipseObstacle(int id, Point2 center, double semi_major, double semi_minor,
                  double inclination, double safety_margin = 0.0);

  int id() const { return id_; }
  Point2 center() const { return center_; }
  double semi_major() const { return semi_major_; }
  double semi_minor() const { return semi_minor_; }
  double inclination() const { return inclination_; }
  double safety_margin() const { return safety_margin_; }
  double effective_major() const { return semi_major_ + safety_margin_; }
  double effective_minor() const { return semi_minor_ + safety_margin_; }

  Point2 to_unit(Point2 world) const;
  Point2 from_unit(Point2 unit) const;

  /// Unit-frame direction (no translation) mapped back to the world frame.
  Point2 direction_from_unit(Point2 unit_dir) const;

  friend bool operator==(const EllipseObstacle& a, const EllipseObstacle& b) {
    return a.id_ == b.id_ && a.center_ == b.center_ && a.semi_major_ == b.semi_major_ &&
           a.semi_minor_ == b.semi_minor_ && a.inclination_ == b.inclination_ &&
           a.safety_margin_ == b.safety_margin_;
  }

 private:
  int id_;
  Point2 center_;
  double semi_major_;
  double semi_minor_;
  double inclination_;
  double safety_margin_;
  double cos_;
  double sin_;
};

/// Left-hand side of the waypoint feasibility inequality minus one.
/// >= 0 outside or on the inflated ellipse, < 0 inside.
double signed_margin(const EllipseObstacle& obs, Point2 p);

/// Euclidean distance from p to the inflated boundary; 0 when p is inside.
double boundary_distance(const EllipseObstacle& obs, Point2 p);

/// Smallest parameter t in [0, 1] at which the segment enters the inflated
/// ellipse, provided the segment penetrates deeper than eps (margin < -eps)
/// somewhere. Tangential contact is not a collision.
std::optional<double> segment_collides(const EllipseObstacle& obs, const Segment& s,
                                       double eps);

struct Collision {
  std::size_t index;  // position in the obstacle list
  int id;
  double entry;
};

/// The obstacle whose penetration starts closest to s.p; ties go to the
/// lower id.
std::optional<Collision> first_collided(const Segment& s,
                                        std::span<const EllipseObstacle> obstacles, double eps);

/// Number of distinct obstacles the segment penetrates.
int count_collisions(const Segment& s, std::span<const EllipseObstacle> obstacles, double eps);

/// The two tangency points seen from p (polar-line construction in the unit
/// frame). Throws PointInsideObstacle unless p is strictly outside.
std::array<Point2, 2> tangent_points(const EllipseObstacle& obs, Point2 p);

struct SubPathCandidate {
  Point2 waypoint;
  Segment origin_leg;
  Segment destination_leg;
  double length = 0.0;
};

/// Side of the directed line O->D: +1 left, -1 right.
enum class Side : int { Left = 1, Right = -1 };

/// Intersection of the ray from `origin` along `origin_dir` with the ray from
/// `destination` along `destination_dir`. Throws DegenerateTangency when the
/// rays are parallel or meet behind either apex.
Point2 ray_intersection(Point2 origin, Point2 origin_dir, Point2 destination,
                        Point2 destination_dir);

SubPathCandidate make_candidate(Point2 origin, Point2 waypoint, Point2 destination);

/// The two tangent-intersection sub-paths around `obs`: element 0 passes the
/// obstacle on its left-hand flank as seen travelling O->D (it lies left of
/// O->D whenever that segment crosses the obstacle), element 1 on the right.
std::array<SubPathCandidate, 2> sub_paths(Point2 origin, Point2 destination,
                                          const EllipseObstacle& obs);

/// Sub-path on one side of O->D that clears every obstacle of `cluster`: the
/// outermost origin-tangent is intersected with the outermost
/// destination-tangent. With a single obstacle this equals the matching
/// element of sub_paths().
SubPathCandidate side_candidate(Point2 origin, Point2 destination,
                                std::span<const EllipseObstacle* const> cluster, Side side);

}  // namespace tangentplan
