#include "tangentplan/planner_static.hpp"

#include <algorithm>
#include <string>

#include "avoidance.hpp"
#include "tangentplan/error.hpp"

namespace tangentplan {

SearchSettings resolve(const PlannerConfig& config, const Scenario& scenario) {
  SearchSettings s;
  s.eps = config.eps.value_or(scenario.default_eps());
  if (!(s.eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  const auto n = static_cast<int>(scenario.obstacles.size() + scenario.popups.size());
  s.max_iterations = config.max_iterations.value_or(std::max(1, 50 * n));
  if (s.max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");
  s.tie_break = config.tie_break;
  if (config.prefer_in_bounds) s.bounds = scenario.bounds;
  return s;
}

namespace {

const EllipseObstacle* find_by_id(std::span<const EllipseObstacle> obstacles, int id) {
  for (const auto& o : obstacles) {
    if (o.id() == id) return &o;
  }
  return nullptr;
}

// -1 when a wins, +1 when b wins, 0 when the rule is indifferent.
int prefer_fewer(int a, int b) { return a < b ? -1 : (b < a ? 1 : 0); }

}  // namespace

SubPathChoice select_subpath(const SubPathCandidate& a, const SubPathCandidate& b,
                             std::span<const int> avoided,
                             std::span<const EllipseObstacle> obstacles, double eps,
                             TieBreak tie_break) {
  auto decided = [](int verdict, int rule) { return SubPathChoice{verdict < 0 ? 0 : 1, rule}; };

  if (!avoided.empty()) {
    if (const EllipseObstacle* last = find_by_id(obstacles, avoided.back())) {
      const bool a_hits = segment_collides(*last, a.origin_leg, eps).has_value();
      const bool b_hits = segment_collides(*last, b.origin_leg, eps).has_value();
      if (a_hits != b_hits) return decided(a_hits ? 1 : -1, 1);
    }
  }

  if (int v = prefer_fewer(count_collisions(a.origin_leg, obstacles, eps),
                           count_collisions(b.origin_leg, obstacles, eps))) {
    return decided(v, 2);
  }
  if (int v = prefer_fewer(count_collisions(a.destination_leg, obstacles, eps),
                           count_collisions(b.destination_leg, obstacles, eps))) {
    return decided(v, 3);
  }
  if (std::abs(a.length - b.length) > eps) return decided(a.length < b.length ? -1 : 1, 4);

  SubPathChoice tie{0, 4, true};
  if (tie_break == TieBreak::Lexicographic) {
    const Point2 fa = a.waypoint;
    const Point2 fb = b.waypoint;
    if (std::abs(fa.x - fb.x) > eps) {
      tie.index = fa.x < fb.x ? 0 : 1;
    } else if (std::abs(fa.y - fb.y) > eps) {
      tie.index = fa.y < fb.y ? 0 : 1;
    }
  }
  return tie;
}

namespace detail {

bool strictly_outside_all(Point2 p, std::span<const EllipseObstacle> obstacles, double threshold) {
  return std::all_of(obstacles.begin(), obstacles.end(),
                     [&](const EllipseObstacle& o) { return signed_margin(o, p) > threshold; });
}

namespace {

// Grows the cluster around `seed` until the side's waypoint is strictly
// outside every obstacle. Returns false when that is impossible.
bool repair_side(Point2 origin, Point2 destination, const EllipseObstacle& seed,
                 std::span<const EllipseObstacle> obstacles, double eps, Side side,
                 SubPathCandidate& cand, std::size_t& cluster_size) {
  std::vector<const EllipseObstacle*> cluster{&seed};
  for (std::size_t round = 0; round <= obstacles.size(); ++round) {
    bool grew = false;
    for (const auto& o : obstacles) {
      const double m = signed_margin(o, cand.waypoint);
      if (m > eps) continue;
      // The waypoint lies on tangents of every cluster member, so it can sit
      // on a member's boundary when both tangency points coincide.
      if (std::find(cluster.begin(), cluster.end(), &o) != cluster.end()) {
        if (m > 0.0) continue;
        return false;
      }
      if (!(signed_margin(o, origin) > eps) || !(signed_margin(o, destination) > eps)) {
        return false;
      }
      cluster.push_back(&o);
      grew = true;
    }
    if (!grew) {
      cluster_size = cluster.size();
      return true;
    }
    try {
      cand = side_candidate(origin, destination, cluster, side);
    } catch (const Error&) {
      return false;
    }
  }
  return false;
}

void build_step(Point2 origin, Point2 destination, const EllipseObstacle& obstacle,
                std::span<const EllipseObstacle> obstacles, std::span<const int> avoided,
                const SearchSettings& settings, TraceRecord& rec) {
  // Each side is built on its own: a long ellipse crossing O-D at a shallow
  // angle can make one side's tangents diverge while the other stays usable.
  const Side sides[2] = {Side::Left, Side::Right};
  const EllipseObstacle* const seed[1] = {&obstacle};
  bool degenerate = false;
  for (int k = 0; k < 2; ++k) {
    rec.cluster_size[k] = 1;
    rec.candidates[k] = SubPathCandidate{};
    try {
      rec.candidates[k] = side_candidate(origin, destination, seed, sides[k]);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateTangency) throw;
      degenerate = true;
      rec.usable[k] = false;
      continue;
    }
    rec.usable[k] = repair_side(origin, destination, obstacle, obstacles, settings.eps, sides[k],
                                rec.candidates[k], rec.cluster_size[k]);
  }
  if (!rec.usable[0] && !rec.usable[1]) {
    if (degenerate) {
      throw Error(ErrorCode::DegenerateTangency,
                  "no finite tangent intersection around obstacle " + std::to_string(obstacle.id()));
    }
    throw Error(ErrorCode::PlanningFailed,
                "no feasible sub-path around obstacle " + std::to_string(obstacle.id()));
  }
  bool eligible[2] = {rec.usable[0], rec.usable[1]};
  if (settings.bounds && eligible[0] && eligible[1]) {
    const bool inside[2] = {settings.bounds->contains(rec.candidates[0].waypoint),
                            settings.bounds->contains(rec.candidates[1].waypoint)};
    if (inside[0] != inside[1]) {
      eligible[0] = inside[0];
      eligible[1] = inside[1];
    }
  }
  if (eligible[0] && eligible[1]) {
    const auto choice = select_subpath(rec.candidates[0], rec.candidates[1], avoided, obstacles,
                                       settings.eps, settings.tie_break);
    rec.chosen = choice.index;
    rec.rule = choice.rule;
    rec.tie_break = choice.tie_break;
  } else {
    rec.chosen = eligible[0] ? 0 : 1;
    rec.rule = 0;
    rec.tie_break = false;
  }
  rec.waypoint = rec.candidates[rec.chosen].waypoint;
  if (distance(rec.waypoint, origin) <= settings.eps ||
      distance(rec.waypoint, destination) <= settings.eps) {
    throw Error(ErrorCode::DegenerateTangency, "waypoint coincides with O or D");
  }
}

}  // namespace

TraceRecord avoid_obstacle(Point2 origin, Point2 destination, const Collision& hit,
                           std::span<const EllipseObstacle> obstacles,
                           std::span<const int> avoided, const SearchSettings& settings) {
  TraceRecord rec;
  rec.origin = origin;
  rec.destination = destination;
  rec.obstacle_id = hit.id;
  const EllipseObstacle& obstacle = obstacles[hit.index];
  try {
    build_step(origin, destination, obstacle, obstacles, avoided, settings, rec);
    return rec;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateTangency && e.code() != ErrorCode::PointInsideObstacle) {
      throw;
    }
  }
  const Point2 od = destination - origin;
  const double len = norm(od);
  const Point2 normal{-od.y / len, od.x / len};
  const Point2 nudged = destination + (settings.eps * 1e3) * normal;
  rec.perturbed = true;
  try {
    build_step(origin, nudged, obstacle, obstacles, avoided, settings, rec);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PointInsideObstacle) {
      throw Error(ErrorCode::DegenerateTangency, e.what());
    }
    throw;
  }
  return rec;
}

}  // namespace detail

PathPlan plan_between(Point2 start, Point2 end, std::span<const EllipseObstacle> obstacles,
                      const SearchSettings& settings) {
  PathPlan plan;
  std::vector<Point2> determined{start};
  std::vector<Point2> candidates{end};

  while (!candidates.empty()) {
    const Point2 o = determined.back();
    const Point2 d = candidates.back();
    const auto hit = first_collided({o, d}, obstacles, settings.eps);
    if (!hit) {
      determined.push_back(d);
      candidates.pop_back();
      continue;
    }
    if (plan.iterations >= settings.max_iterations) {
      throw Error(ErrorCode::PlanningFailed,
                  "iteration cap of " + std::to_string(settings.max_iterations) + " reached");
    }
    ++plan.iterations;

    TraceRecord rec = detail::avoid_obstacle(o, d, *hit, obstacles, plan.avoided, settings);
    rec.determined_count = determined.size();
    if (const auto ot = first_collided({o, rec.waypoint}, obstacles, settings.eps)) {
      rec.waypoint_obstacle_id = ot->id;
      candidates.push_back(rec.waypoint);
    } else {
      rec.determined = true;
      determined.push_back(rec.waypoint);
    }
    plan.avoided.push_back(hit->id);
    plan.trace.push_back(std::move(rec));
  }

  plan.route = std::move(determined);
  for (std::size_t i = 1; i < plan.route.size(); ++i) {
    plan.length += distance(plan.route[i - 1], plan.route[i]);
  }
  return plan;
}

PathPlan plan_static(const Scenario& scenario, const PlannerConfig& config) {
  validate(scenario);
  return plan_between(scenario.start, scenario.end, scenario.obstacles, resolve(config, scenario));
}

}  // namespace tangentplan
