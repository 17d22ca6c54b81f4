#include "tangentplan/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tangentplan/error.hpp"
#include "tangentplan/planner_static.hpp"

namespace tangentplan {

namespace {

constexpr double kPi = std::numbers::pi;

struct Band {
  bool horizontal;
  double lo;
  double hi;
};

struct ClassParams {
  double min_radius;  // km, circles; semi-minor for ellipses
  double max_radius;  // km, circles; semi-major for ellipses
  bool elongated;
  bool overlap;
  int corridors;
  double reference_count;  // obstacle count the radii are sized for in a 100 km field
};

ClassParams params_for(EnvironmentKind kind, double field) {
  const double unit = field / 100.0;
  switch (kind) {
    case EnvironmentKind::E1: return {2.0 * unit, 12.0 * unit, true, false, 2, 10.0};
    case EnvironmentKind::E2: return {4.0 * unit, 9.0 * unit, false, false, 0, 10.0};
    case EnvironmentKind::E3: return {2.0, 4.5, false, false, 0, 80.0};
    case EnvironmentKind::E4: return {2.0, 4.5, false, true, 0, 80.0};
    case EnvironmentKind::E5: return {3.0, 6.5, false, true, 2, 40.0};
  }
  return {2.0, 4.5, false, false, 0, 80.0};
}

// Axis-aligned half-extent of an inflated ellipse along x and y.
Point2 half_extent(const EllipseObstacle& o) {
  const double a = o.effective_major();
  const double b = o.effective_minor();
  const double c = std::cos(o.inclination());
  const double s = std::sin(o.inclination());
  return {std::sqrt(a * a * c * c + b * b * s * s), std::sqrt(a * a * s * s + b * b * c * c)};
}

bool crosses_band(const EllipseObstacle& o, const Band& band) {
  const Point2 h = half_extent(o);
  const double lo = band.horizontal ? o.center().y - h.y : o.center().x - h.x;
  const double hi = band.horizontal ? o.center().y + h.y : o.center().x + h.x;
  return hi > band.lo && lo < band.hi;
}

// Inflated ellipses kept at least `gap` apart. Circles are tested exactly;
// ellipses by sampling the boundary of each one grown by the gap against the
// other, which the gap makes safe against misses between samples.
bool separated(const EllipseObstacle& a, const EllipseObstacle& b, double gap) {
  const double d = distance(a.center(), b.center());
  if (d > a.effective_major() + b.effective_major() + gap) return true;
  const bool circles = a.semi_major() == a.semi_minor() && b.semi_major() == b.semi_minor();
  if (circles) return false;
  constexpr int kSamples = 96;
  auto outside = [&](const EllipseObstacle& p, const EllipseObstacle& q) {
    const EllipseObstacle grown(p.id(), p.center(), p.semi_major(), p.semi_minor(),
                                p.inclination(), p.safety_margin() + gap);
    if (!(signed_margin(q, grown.center()) > 0.0)) return false;
    for (int k = 0; k < kSamples; ++k) {
      const double t = 2.0 * kPi * k / kSamples;
      if (!(signed_margin(q, grown.from_unit({std::cos(t), std::sin(t)})) > 0.0)) return false;
    }
    return true;
  };
  return outside(a, b) && outside(b, a);
}

bool feasible_endpoint(Point2 p, const std::vector<EllipseObstacle>& obstacles,
                       double clearance) {
  return std::all_of(obstacles.begin(), obstacles.end(), [&](const EllipseObstacle& o) {
    return signed_margin(o, p) > 0.0 && boundary_distance(o, p) > clearance;
  });
}

}  // namespace

const char* to_string(EnvironmentKind kind) {
  switch (kind) {
    case EnvironmentKind::E1: return "E1";
    case EnvironmentKind::E2: return "E2";
    case EnvironmentKind::E3: return "E3";
    case EnvironmentKind::E4: return "E4";
    case EnvironmentKind::E5: return "E5";
  }
  return "E?";
}

std::optional<EnvironmentKind> environment_from_string(const std::string& text) {
  for (auto k : {EnvironmentKind::E1, EnvironmentKind::E2, EnvironmentKind::E3,
                 EnvironmentKind::E4, EnvironmentKind::E5}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

Scenario generate_environment(EnvironmentKind kind, double field, int count, std::uint64_t seed,
                              bool known) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "obstacle count must be >= 1");
  if (!(field > 0.0)) throw Error(ErrorCode::InvalidArgument, "field size must be positive");

  // The class is folded into the stream so that classes whose parameters
  // coincide at some count still get different layouts.
  SeededRng rng(seed ^ (0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(kind) + 1)));
  ClassParams p = params_for(kind, field);
  // Above the reference density the radii shrink so that coverage stays
  // roughly that of the class.
  const double reference = p.reference_count * (field / 100.0) * (field / 100.0);
  if (count > reference) {
    const double shrink = std::sqrt(reference / count);
    p.min_radius *= shrink;
    p.max_radius *= shrink;
  }
  Scenario sc;
  sc.name = std::string(to_string(kind)) + "_n" + std::to_string(count) + "_f" +
            std::to_string(static_cast<long long>(std::llround(field))) + "_s" +
            std::to_string(seed);
  sc.bounds = {field, field};
  sc.safety_margin = 0.005 * field;

  // Start and end corner boxes stay free of obstacle centers.
  const double corner = 0.12 * field;

  std::vector<Band> bands;
  for (int i = 0; i < p.corridors; ++i) {
    const double width = 0.05 * field;
    const double mid = rng.uniform(0.25 * field, 0.75 * field);
    bands.push_back({i % 2 == 0, mid - width / 2.0, mid + width / 2.0});
  }

  // A crowded round restarts with radii and gap shrunk by 15%.
  constexpr int kRounds = 8;
  double gap = 0.01 * field;
  bool filled = false;
  for (int round = 0; round < kRounds && !filled; ++round) {
    if (round > 0) {
      p.min_radius *= 0.85;
      p.max_radius *= 0.85;
      gap *= 0.85;
    }
    sc.obstacles.clear();
    const int max_attempts = 200 * count;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
      if (static_cast<int>(sc.obstacles.size()) == count) break;
      const Point2 c{rng.uniform(0.0, field), rng.uniform(0.0, field)};
      double a = 0.0;
      double b = 0.0;
      double theta = 0.0;
      if (p.elongated) {
        a = rng.uniform(0.5 * p.max_radius, p.max_radius);
        b = rng.uniform(p.min_radius, std::min(a, 2.0 * p.min_radius));
        theta = rng.uniform(0.0, kPi);
      } else {
        a = b = rng.uniform(p.min_radius, p.max_radius);
      }
      const EllipseObstacle obs(static_cast<int>(sc.obstacles.size()), c, a, b, theta,
                                sc.safety_margin);
      if ((c.x < corner && c.y < corner) || (c.x > field - corner && c.y > field - corner)) {
        continue;
      }
      if (std::any_of(bands.begin(), bands.end(),
                      [&](const Band& band) { return crosses_band(obs, band); })) {
        continue;
      }
      if (!p.overlap && !std::all_of(sc.obstacles.begin(), sc.obstacles.end(),
                                     [&](const EllipseObstacle& o) {
                                       return separated(o, obs, gap);
                                     })) {
        continue;
      }
      sc.obstacles.push_back(obs);
    }
    filled = static_cast<int>(sc.obstacles.size()) == count;
  }
  if (!filled) {
    throw Error(ErrorCode::GenerationFailed,
                "could not place " + std::to_string(count) + " obstacles in " + sc.name);
  }

  const double clearance = 0.005 * field;
  bool placed = false;
  for (int i = 0; i < 1000 && !placed; ++i) {
    sc.start = {rng.uniform(0.02 * field, corner), rng.uniform(0.02 * field, corner)};
    sc.end = {rng.uniform(field - corner, 0.98 * field), rng.uniform(field - corner, 0.98 * field)};
    placed = feasible_endpoint(sc.start, sc.obstacles, clearance) &&
             feasible_endpoint(sc.end, sc.obstacles, clearance);
  }
  if (!placed) throw Error(ErrorCode::GenerationFailed, "no feasible start/end in " + sc.name);

  sc.initially_known.assign(sc.obstacles.size(), known);
  validate(sc);
  return sc;
}

Scenario generate_popup_scenario(EnvironmentKind kind, double field, int count, int popups,
                                 std::uint64_t seed) {
  if (popups < 1) throw Error(ErrorCode::InvalidArgument, "pop-up count must be >= 1");
  Scenario sc = generate_environment(kind, field, count, seed, true);
  sc.name += "_p" + std::to_string(popups);
  PathPlan offline;
  try {
    offline = plan_static(sc);
  } catch (const Error& e) {
    throw Error(ErrorCode::GenerationFailed, sc.name + ": no offline route (" + e.what() + ")");
  }

  SeededRng rng(seed ^ 0xD1B54A32D192ED03ull);
  const double unit = field / 100.0;
  const double lead = 15.0 * unit;  // flight distance between trigger and arrival
  int id = static_cast<int>(sc.obstacles.size());
  for (int attempt = 0; attempt < 200 * popups && static_cast<int>(sc.popups.size()) < popups;
       ++attempt) {
    // Point at a random arc length along the middle of the offline route.
    const double s = rng.uniform(0.2, 0.8) * offline.length;
    double acc = 0.0;
    Point2 at = offline.route.back();
    Point2 dir{1.0, 0.0};
    for (std::size_t i = 1; i < offline.route.size(); ++i) {
      const double leg = distance(offline.route[i - 1], offline.route[i]);
      if (acc + leg >= s && leg > 0.0) {
        dir = (1.0 / leg) * (offline.route[i] - offline.route[i - 1]);
        at = offline.route[i - 1] + (s - acc) * dir;
        break;
      }
      acc += leg;
    }
    const double r = rng.uniform(2.0, 4.0) * unit;
    const Point2 normal{-dir.y, dir.x};
    const Point2 c = at + rng.uniform(-0.5, 0.5) * r * normal;
    const bool visible = rng.uniform() < 0.5;
    const EllipseObstacle obs(id, c, r, r, 0.0, sc.safety_margin);
    const double clearance = 2.0 * sc.safety_margin;
    if (!(boundary_distance(obs, sc.start) > clearance) ||
        !(boundary_distance(obs, sc.end) > clearance)) {
      continue;
    }
    PopupEvent ev{std::nullopt, obs};
    if (!visible && s - lead - r > 0.0) ev.trigger_time = s - lead - r;
    sc.popups.push_back(ev);
    ++id;
  }
  if (static_cast<int>(sc.popups.size()) < popups) {
    throw Error(ErrorCode::GenerationFailed, sc.name + ": could not place pop-ups");
  }
  validate(sc);
  return sc;
}

std::vector<WallSpec> u_trap(Point2 center, double width, double depth, double opening,
                             double thickness) {
  const double c = std::cos(opening);
  const double s = std::sin(opening);
  auto place = [&](Point2 local) {
    return Point2{center.x + local.x * c - local.y * s, center.y + local.x * s + local.y * c};
  };
  std::vector<WallSpec> walls;
  // Back wall closes the side opposite to the opening.
  walls.push_back({place({-depth / 2.0, 0.0}), width + 2.0 * thickness, thickness,
                   opening + kPi / 2.0});
  for (double side : {1.0, -1.0}) {
    walls.push_back({place({0.0, side * width / 2.0}), depth + 2.0 * thickness, thickness, opening});
  }
  return walls;
}

Scenario generate_maze(const MazeSpec& spec, std::uint64_t seed) {
  SeededRng rng(seed);
  Scenario sc;
  sc.name = spec.name;
  sc.bounds = spec.bounds;
  sc.start = spec.start;
  sc.end = spec.end;
  sc.safety_margin = spec.safety_margin;
  int id = 0;
  for (const auto& w : spec.walls) {
    Point2 c = w.center;
    if (spec.jitter > 0.0) {
      c.x += rng.uniform(-spec.jitter, spec.jitter);
      c.y += rng.uniform(-spec.jitter, spec.jitter);
    }
    const double a = std::max(w.length, w.thickness) / 2.0;
    const double b = std::min(w.length, w.thickness) / 2.0;
    const double angle = w.length >= w.thickness ? w.angle : w.angle + kPi / 2.0;
    sc.obstacles.emplace_back(id++, c, a, b, angle, spec.safety_margin);
  }
  sc.initially_known.assign(sc.obstacles.size(), true);
  for (const auto& o : sc.obstacles) {
    if (!(signed_margin(o, sc.start) > 0.0) || !(signed_margin(o, sc.end) > 0.0)) {
      throw Error(ErrorCode::GenerationFailed,
                  spec.name + ": start or end inside wall " + std::to_string(o.id()));
    }
  }
  validate(sc);
  return sc;
}

MazeSpec canned_maze(int index) {
  MazeSpec m;
  m.bounds = {100.0, 100.0};
  m.safety_margin = 0.5;
  auto add = [&](const std::vector<WallSpec>& walls) {
    m.walls.insert(m.walls.end(), walls.begin(), walls.end());
  };
  switch (index) {
    case 1:
      // Single trap around the start, open away from the end.
      m.name = "M1";
      m.start = {30.0, 50.0};
      m.end = {90.0, 50.0};
      add(u_trap({30.0, 50.0}, 24.0, 20.0, kPi));
      break;
    case 2:
      // Trap around the end, open away from the start.
      m.name = "M2";
      m.start = {10.0, 50.0};
      m.end = {70.0, 50.0};
      add(u_trap({70.0, 50.0}, 24.0, 20.0, 0.0));
      break;
    case 3:
      // S-shaped corridor of staggered walls.
      m.name = "M3";
      m.start = {10.0, 10.0};
      m.end = {90.0, 90.0};
      m.walls = {{{35.0, 30.0}, 70.0, 2.0, 0.0},
                 {{65.0, 55.0}, 70.0, 2.0, 0.0},
                 {{35.0, 80.0}, 70.0, 2.0, 0.0}};
      break;
    case 4:
      // Nested traps around the start with alternating openings.
      m.name = "M4";
      m.start = {40.0, 50.0};
      m.end = {95.0, 50.0};
      add(u_trap({40.0, 50.0}, 14.0, 12.0, kPi));
      add(u_trap({42.0, 50.0}, 40.0, 36.0, kPi / 2.0));
      break;
    case 5:
      // Start and end each inside a trap.
      m.name = "M5";
      m.start = {25.0, 40.0};
      m.end = {75.0, 60.0};
      add(u_trap({25.0, 40.0}, 20.0, 16.0, kPi));
      add(u_trap({75.0, 60.0}, 20.0, 16.0, 0.0));
      break;
    case 6:
      // Trap behind a staggered wall pair.
      m.name = "M6";
      m.start = {15.0, 15.0};
      m.end = {85.0, 85.0};
      add(u_trap({15.0, 15.0}, 14.0, 12.0, -kPi / 2.0));
      m.walls.push_back({{50.0, 40.0}, 60.0, 2.0, kPi / 4.0});
      m.walls.push_back({{60.0, 70.0}, 40.0, 2.0, -kPi / 4.0});
      break;
    default:
      throw Error(ErrorCode::InvalidArgument, "canned maze index must be 1..6");
  }
  return m;
}

}  // namespace tangentplan
