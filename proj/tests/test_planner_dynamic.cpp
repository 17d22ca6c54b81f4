#include <doctest.h>

#include <algorithm>
#include <vector>

#include "tangentplan/error.hpp"
#include "tangentplan/generators.hpp"
#include "tangentplan/planner_dynamic.hpp"

using namespace tangentplan;

namespace {

EllipseObstacle circle(int id, Point2 c, double r) { return EllipseObstacle(id, c, r, r, 0.0); }

Scenario field(Point2 s, Point2 e, std::vector<EllipseObstacle> obs, bool known = true) {
  Scenario sc;
  sc.name = "test";
  sc.bounds = {120, 100};
  sc.start = s;
  sc.end = e;
  sc.initially_known.assign(obs.size(), known);
  sc.obstacles = std::move(obs);
  return sc;
}

// Offline route S -> F1 -> F2 -> E around B1 and B2.
Scenario popup_layout() {
  return field({10, 50}, {110, 50}, {circle(1, {35, 48}, 6), circle(2, {70, 47}, 6)});
}

bool segment_clear(Point2 a, Point2 b, std::span<const EllipseObstacle> obs, double eps) {
  return !first_collided({a, b}, obs, eps).has_value();
}

}  // namespace

TEST_CASE("visible set uses a closed range") {
  const SensorModel sensor{10.0};
  const std::vector<EllipseObstacle> obs{circle(1, {15, 0}, 5), circle(2, {16, 0}, 5),
                                         circle(3, {0, 10}, 0.5)};
  const auto seen = visible_set({0, 0}, sensor, obs);
  CHECK(seen == std::vector<int>{1, 3});
}

TEST_CASE("visible set at the start of a six obstacle layout") {
  const std::vector<EllipseObstacle> obs{circle(1, {18, 52}, 4), circle(2, {14, 40}, 3),
                                         circle(3, {40, 60}, 5), circle(4, {60, 30}, 6),
                                         circle(5, {10, 62}, 3), circle(6, {30, 45}, 4)};
  CHECK(visible_set({10, 50}, SensorModel{10.0}, obs) == std::vector<int>{1, 2, 5});
}

TEST_CASE("empty field is flown in legs of l") {
  const auto sc = field({10, 50}, {20, 50}, {});
  const auto res = plan_unknown(sc, 3.0, SensorModel{10.0});
  REQUIRE(res.plan.route.size() == 5);
  for (int k = 0; k < 4; ++k) {
    CHECK(res.plan.route[k].x == doctest::Approx(10.0 + 3.0 * k));
    CHECK(res.plan.route[k].y == doctest::Approx(50.0));
  }
  CHECK(res.plan.route.back() == sc.end);
  CHECK(res.log.visit_times.back() == doctest::Approx(10.0));
}

TEST_CASE("free legs longer than l are cut at l") {
  const auto sc = field({10, 50}, {110, 50},
                        {circle(1, {40, 50}, 6), circle(2, {75, 53}, 5), circle(3, {95, 40}, 4)},
                        false);
  const double l = 3.0;
  const auto res = plan_unknown(sc, l, SensorModel{10.0});
  const auto& route = res.plan.route;
  REQUIRE(route.size() > 3);
  int cut = 0;
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    const double leg = distance(route[i], route[i + 1]);
    CHECK(leg <= l + 1e-9);
    if (std::abs(leg - l) < 1e-9) ++cut;
    CHECK(segment_clear(route[i], route[i + 1], sc.obstacles, sc.default_eps()));
  }
  CHECK(cut > 10);
  CHECK(res.plan.trace.size() >= 1);
  CHECK(route.back() == sc.end);
}

TEST_CASE("one obstacle in range with a long step matches the offline plan") {
  const auto sc = field({10, 50}, {30, 52}, {circle(1, {20, 50}, 3)});
  const auto offline = plan_static(sc);
  const auto online = plan_unknown(sc, 50.0, SensorModel{60.0});
  CHECK(online.plan.route == offline.route);
}

TEST_CASE("unknown mode rejects bad flight parameters") {
  const auto sc = field({10, 50}, {30, 50}, {});
  for (auto [l, r] : {std::pair{0.0, 10.0}, std::pair{5.0, 5.0}, std::pair{-1.0, 10.0}}) {
    try {
      plan_unknown(sc, l, SensorModel{r});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidArgument);
    }
  }
}

TEST_CASE("no pop-ups leaves the offline route alone") {
  const auto sc = popup_layout();
  const auto offline = plan_static(sc);
  const auto res = replan_popup(sc, offline, {}, SensorModel{10.0});
  CHECK(res.plan.route == offline.route);
  CHECK(res.log.replan_events.empty());
  CHECK(res.log.visited.back() == sc.end);
}

TEST_CASE("pop-up on the last segment is spliced from its start") {
  const auto sc = popup_layout();
  const auto offline = plan_static(sc);
  REQUIRE(offline.route.size() == 4);
  const Point2 f2 = offline.route[2];
  const Point2 dir = (1.0 / distance(f2, sc.end)) * (sc.end - f2);
  const std::vector<PopupEvent> events{{std::nullopt, circle(5, f2 + 12.0 * dir, 3)}};

  const auto res = replan_popup(sc, offline, events, SensorModel{10.0});
  REQUIRE(res.log.replan_events.size() == 1);
  const auto& ev = res.log.replan_events[0];
  CHECK(ev.conflict_index == 2);
  REQUIRE(ev.sub_route.size() == 3);
  CHECK(ev.sub_route.front() == f2);
  CHECK(ev.sub_route.back() == sc.end);
  const std::vector<Point2> expected{offline.route[0], offline.route[1], f2, ev.sub_route[1],
                                     sc.end};
  CHECK(res.plan.route == expected);

  std::vector<EllipseObstacle> all = sc.obstacles;
  all.push_back(events[0].obstacle);
  for (std::size_t i = 0; i + 1 < res.log.visited.size(); ++i) {
    CHECK(segment_clear(res.log.visited[i], res.log.visited[i + 1], all, sc.default_eps()));
  }
}

TEST_CASE("a distant pop-up is seen but changes nothing") {
  const auto sc = popup_layout();
  const auto offline = plan_static(sc);
  const std::vector<PopupEvent> events{{std::nullopt, circle(5, {90, 62}, 2)}};
  REQUIRE(segment_clear(offline.route[2], offline.route[3], std::span(&events[0].obstacle, 1),
                        1e-9));
  const auto res = replan_popup(sc, offline, events, SensorModel{10.0});
  CHECK(res.plan.route == offline.route);
  REQUIRE(res.log.perception_events.size() == 1);
  CHECK(res.log.perception_events[0].ids == std::vector<int>{5});
  CHECK(res.log.replan_events.empty());
}

TEST_CASE("triggered pop-ups stay hidden until their time") {
  const auto sc = popup_layout();
  const std::vector<PopupEvent> events{{50.0, circle(5, {100, 80}, 2)}};
  CHECK(active_obstacles(sc, events, 10.0).size() == 2);
  CHECK(active_obstacles(sc, events, 50.0).size() == 3);
}

TEST_CASE("unknown flights over generated fields are safe") {
  int ok = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto sc = generate_environment(EnvironmentKind::E3, 100, 30, seed, false);
    try {
      const auto res = plan_unknown(sc, 3.0, SensorModel{10.0});
      for (std::size_t i = 0; i + 1 < res.log.visited.size(); ++i) {
        CHECK(distance(res.log.visited[i], res.log.visited[i + 1]) <= 3.0 + sc.default_eps());
        CHECK(segment_clear(res.log.visited[i], res.log.visited[i + 1], sc.obstacles,
                            sc.default_eps()));
      }
      ++ok;
    } catch (const Error& e) {
      CHECK((e.code() == ErrorCode::PlanningFailed || e.code() == ErrorCode::DeadEnd ||
             e.code() == ErrorCode::DegenerateTangency));
    }
  }
  CHECK(ok >= 18);
}

TEST_CASE("pop-up flights keep the flown prefix") {
  int replans = 0;
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    Scenario sc;
    try {
      sc = generate_popup_scenario(EnvironmentKind::E2, 100, 20, 3, seed);
    } catch (const Error&) {
      continue;
    }
    const auto offline = plan_static(offline_view(sc));
    try {
      const auto res = replan_popup(sc, offline, sc.popups, SensorModel{10.0});
      for (const auto& ev : res.log.replan_events) {
        ++replans;
        REQUIRE(ev.route_after.size() >= ev.conflict_index + 1);
        CHECK(std::equal(ev.route_before.begin(),
                         ev.route_before.begin() + static_cast<std::ptrdiff_t>(ev.conflict_index),
                         ev.route_after.begin()));
      }
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PlanningFailed);
    }
  }
  CHECK(replans > 0);
}
