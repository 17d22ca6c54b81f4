#include "tangentplan/planner_dynamic.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "avoidance.hpp"
#include "tangentplan/error.hpp"

namespace tangentplan {

namespace {

constexpr std::size_t kMaxFlightSteps = 1'000'000;

bool is_active(const PopupEvent& p, double time) {
  return !p.trigger_time || *p.trigger_time <= time;
}

// Every obstacle the simulation may ever contain, with what the UAV knows
// about it. Known obstacles are kept in universe order so that results do not
// depend on the order of discovery.
class WorldModel {
 public:
  WorldModel(const Scenario& scenario, std::span<const PopupEvent> popups, bool use_known_flags) {
    for (std::size_t i = 0; i < scenario.obstacles.size(); ++i) {
      entries_.push_back({scenario.obstacles[i], std::nullopt,
                          use_known_flags && scenario.initially_known[i]});
    }
    for (const auto& p : popups) entries_.push_back({p.obstacle, p.trigger_time, false});
    rebuild();
  }

  /// Marks obstacles within sensor range as known; returns the new ids.
  std::vector<int> perceive(Point2 position, const SensorModel& sensor, double time) {
    std::vector<int> fresh;
    for (auto& e : entries_) {
      if (e.known) continue;
      if (e.trigger && *e.trigger > time) continue;
      if (boundary_distance(e.obstacle, position) <= sensor.range) {
        e.known = true;
        fresh.push_back(e.obstacle.id());
      }
    }
    if (!fresh.empty()) rebuild();
    return fresh;
  }

  std::span<const EllipseObstacle> known() const { return known_; }

 private:
  struct Entry {
    EllipseObstacle obstacle;
    std::optional<double> trigger;
    bool known;
  };

  void rebuild() {
    known_.clear();
    for (const auto& e : entries_) {
      if (e.known) known_.push_back(e.obstacle);
    }
  }

  std::vector<Entry> entries_;
  std::vector<EllipseObstacle> known_;
};

void check_flight_parameters(double step, const SensorModel& sensor) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "flight step must be positive");
  if (!(sensor.range > step)) {
    throw Error(ErrorCode::InvalidArgument, "sensor range must exceed the flight step");
  }
}

void finish_length(PathPlan& plan) {
  plan.length = 0.0;
  for (std::size_t i = 1; i < plan.route.size(); ++i) {
    plan.length += distance(plan.route[i - 1], plan.route[i]);
  }
}

}  // namespace

std::vector<EllipseObstacle> active_obstacles(const Scenario& scenario,
                                              std::span<const PopupEvent> popups, double time) {
  std::vector<EllipseObstacle> out = scenario.obstacles;
  for (const auto& p : popups) {
    if (is_active(p, time)) out.push_back(p.obstacle);
  }
  return out;
}

std::vector<int> visible_set(Point2 position, const SensorModel& sensor,
                             std::span<const EllipseObstacle> obstacles) {
  std::vector<int> ids;
  for (const auto& o : obstacles) {
    if (boundary_distance(o, position) <= sensor.range) ids.push_back(o.id());
  }
  return ids;
}

Scenario offline_view(const Scenario& scenario) {
  Scenario out = scenario;
  out.obstacles.clear();
  out.initially_known.clear();
  out.popups.clear();
  for (std::size_t i = 0; i < scenario.obstacles.size(); ++i) {
    if (!scenario.initially_known[i]) continue;
    out.obstacles.push_back(scenario.obstacles[i]);
    out.initially_known.push_back(true);
  }
  return out;
}

DynamicResult plan_unknown(const Scenario& scenario, double step, const SensorModel& sensor,
                           const PlannerConfig& config) {
  validate(scenario);
  check_flight_parameters(step, sensor);
  const SearchSettings settings = resolve(config, scenario);

  WorldModel world(scenario, scenario.popups, false);
  DynamicResult res;
  PathPlan& plan = res.plan;
  FlightLog& log = res.log;

  std::vector<Point2> determined{scenario.start};
  std::vector<Point2> candidates{scenario.end};
  double time = 0.0;
  log.visited.push_back(scenario.start);
  log.visit_times.push_back(0.0);

  auto sense = [&]() {
    auto fresh = world.perceive(determined.back(), sensor, time);
    if (!fresh.empty()) log.perception_events.push_back({log.visited.size() - 1, std::move(fresh)});
  };
  sense();

  std::size_t passes = 0;
  while (!candidates.empty()) {
    if (++passes > kMaxFlightSteps) throw Error(ErrorCode::PlanningFailed, "flight step cap reached");
    const Point2 o = determined.back();
    const Point2 d = candidates.back();
    const auto known = world.known();

    if (!detail::strictly_outside_all(o, known, 0.0)) {
      throw Error(ErrorCode::DeadEnd, "UAV position is enclosed by a discovered obstacle");
    }
    // A candidate waypoint swallowed by a newly discovered obstacle is dropped.
    if (candidates.size() > 1 && !detail::strictly_outside_all(d, known, 0.0)) {
      candidates.pop_back();
      continue;
    }

    const auto hit = first_collided({o, d}, known, settings.eps);
    if (!hit) {
      const double len = distance(o, d);
      Point2 next = d;
      if (len > step) {
        next = o + (step / len) * (d - o);
      } else {
        candidates.pop_back();
      }
      determined.push_back(next);
      time += distance(o, next);
      log.visited.push_back(next);
      log.visit_times.push_back(time);
      sense();
      continue;
    }

    if (plan.iterations >= settings.max_iterations) {
      throw Error(ErrorCode::PlanningFailed,
                  "iteration cap of " + std::to_string(settings.max_iterations) + " reached");
    }
    ++plan.iterations;
    TraceRecord rec;
    try {
      rec = detail::avoid_obstacle(o, d, *hit, known, plan.avoided, settings);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PlanningFailed) throw Error(ErrorCode::DeadEnd, e.what());
      throw;
    }
    rec.determined_count = determined.size();
    if (const auto ot = first_collided({o, rec.waypoint}, known, settings.eps)) {
      rec.waypoint_obstacle_id = ot->id;
    }
    candidates.push_back(rec.waypoint);
    plan.avoided.push_back(hit->id);
    plan.trace.push_back(std::move(rec));
  }

  plan.route = std::move(determined);
  finish_length(plan);
  return res;
}

DynamicResult replan_popup(const Scenario& scenario, const PathPlan& offline,
                           std::span<const PopupEvent> events, const SensorModel& sensor,
                           const PlannerConfig& config, double step) {
  validate(scenario);
  check_flight_parameters(step, sensor);
  for (const auto& ev : events) {
    if (!(signed_margin(ev.obstacle, scenario.start) > 0.0) ||
        !(signed_margin(ev.obstacle, scenario.end) > 0.0)) {
      throw Error(ErrorCode::InvalidScenario,
                  "pop-up obstacle " + std::to_string(ev.obstacle.id()) + " covers start or end");
    }
  }
  if (offline.route.size() < 2 || offline.route.front() != scenario.start ||
      offline.route.back() != scenario.end) {
    throw Error(ErrorCode::InvalidArgument, "offline route must run from start to end");
  }
  const SearchSettings settings = resolve(config, scenario);

  WorldModel world(scenario, events, true);
  DynamicResult res;
  PathPlan& plan = res.plan;
  FlightLog& log = res.log;
  plan.iterations = offline.iterations;
  plan.trace = offline.trace;
  plan.avoided = offline.avoided;

  std::vector<Point2> route = offline.route;
  std::size_t next = 1;
  Point2 pos = route.front();
  double time = 0.0;
  log.visited.push_back(pos);
  log.visit_times.push_back(0.0);

  auto resolve_conflicts = [&]() {
    const auto known = world.known();
    if (!detail::strictly_outside_all(pos, known, 0.0)) {
      throw Error(ErrorCode::DeadEnd, "UAV position is enclosed by a discovered obstacle");
    }
    std::size_t s = next - 1;
    while (s + 1 < route.size()) {
      const Point2 a = (s == next - 1) ? pos : route[s];
      if (!first_collided({a, route[s + 1]}, known, settings.eps)) {
        ++s;
        continue;
      }
      ReplanEvent ev;
      ev.position = pos;
      ev.conflict = {a, route[s + 1]};
      ev.conflict_index = s;
      ev.route_before = route;
      if (s == next - 1 && pos != route[s]) {
        route.insert(route.begin() + static_cast<std::ptrdiff_t>(next), pos);
        ++next;
        s = next - 1;
      }

      const auto t0 = std::chrono::steady_clock::now();
      std::vector<std::size_t> targets{s + 1};
      if (s + 1 != route.size() - 1) targets.push_back(route.size() - 1);
      std::optional<PathPlan> sub;
      std::size_t target = 0;
      for (std::size_t tgt : targets) {
        if (!detail::strictly_outside_all(route[tgt], known, 0.0)) continue;
        try {
          sub = plan_between(route[s], route[tgt], known, settings);
          target = tgt;
          break;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::PlanningFailed && e.code() != ErrorCode::DegenerateTangency) {
            throw;
          }
        }
      }
      ev.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (!sub) {
        throw Error(ErrorCode::PlanningFailed, "could not re-plan around a perceived obstacle");
      }

      std::vector<Point2> spliced(route.begin(), route.begin() + static_cast<std::ptrdiff_t>(s));
      spliced.insert(spliced.end(), sub->route.begin(), sub->route.end());
      spliced.insert(spliced.end(), route.begin() + static_cast<std::ptrdiff_t>(target) + 1,
                     route.end());
      route = std::move(spliced);

      plan.iterations += sub->iterations;
      plan.trace.insert(plan.trace.end(), sub->trace.begin(), sub->trace.end());
      plan.avoided.insert(plan.avoided.end(), sub->avoided.begin(), sub->avoided.end());
      ev.sub_route = std::move(sub->route);
      ev.route_after = route;
      log.replan_events.push_back(std::move(ev));
      // The spliced sub-route is clear of everything known; keep scanning after it.
      s += log.replan_events.back().sub_route.size() - 1;
    }
  };

  auto sense = [&]() {
    auto fresh = world.perceive(pos, sensor, time);
    if (fresh.empty()) return;
    log.perception_events.push_back({log.visited.size() - 1, std::move(fresh)});
    resolve_conflicts();
  };
  sense();

  std::size_t steps = 0;
  while (next < route.size()) {
    if (++steps > kMaxFlightSteps) throw Error(ErrorCode::PlanningFailed, "flight step cap reached");
    const Point2 target = route[next];
    const double len = distance(pos, target);
    Point2 reached = target;
    if (len > step) {
      reached = pos + (step / len) * (target - pos);
    } else {
      ++next;
    }
    time += distance(pos, reached);
    pos = reached;
    log.visited.push_back(pos);
    log.visit_times.push_back(time);
    sense();
  }

  plan.route = std::move(route);
  finish_length(plan);
  return res;
}

}  // namespace tangentplan
