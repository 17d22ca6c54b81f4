#include <doctest.h>

#include <filesystem>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "tangentplan/bench.hpp"
#include "tangentplan/error.hpp"
#include "tangentplan/generators.hpp"
#include "tangentplan/grid_astar.hpp"
#include "tangentplan/plan_io.hpp"
#include "tangentplan/render.hpp"
#include "tangentplan/scenario.hpp"

using namespace tangentplan;
namespace fs = std::filesystem;

namespace {

Scenario empty_field(Point2 s, Point2 e) {
  Scenario sc;
  sc.name = "empty";
  sc.bounds = {20, 20};
  sc.start = s;
  sc.end = e;
  return sc;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("tangentplan_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("scenario json round trip") {
  auto sc = generate_popup_scenario(EnvironmentKind::E2, 100, 15, 4, 3);
  sc.initially_known[0] = false;
  const std::string text = to_json(sc);
  const Scenario back = scenario_from_json(text);
  CHECK(to_json(back) == text);
  CHECK(back.obstacles == sc.obstacles);
  CHECK(back.initially_known == sc.initially_known);
  REQUIRE(back.popups.size() == sc.popups.size());
  for (std::size_t i = 0; i < sc.popups.size(); ++i) {
    CHECK(back.popups[i].trigger_time == sc.popups[i].trigger_time);
    CHECK(back.popups[i].obstacle == sc.popups[i].obstacle);
  }
  const auto j = nlohmann::json::parse(text);
  CHECK(j.contains("bounds"));
  CHECK(j["obstacles"][0].contains("theta"));
}

TEST_CASE("generated scenarios round trip") {
  for (auto kind : {EnvironmentKind::E1, EnvironmentKind::E3, EnvironmentKind::E5}) {
    const auto sc = generate_environment(kind, 200, 80, 17);
    CHECK(to_json(scenario_from_json(to_json(sc))) == to_json(sc));
  }
}

TEST_CASE("scenario parsing errors") {
  CHECK(code_of([] { scenario_from_json("{not json"); }) == ErrorCode::Parse);
  CHECK(code_of([] { scenario_from_json("{\"name\": 3}"); }) == ErrorCode::Parse);
  CHECK(code_of([] { load_scenario("/nonexistent/file.json"); }) == ErrorCode::Io);
}

TEST_CASE("scenario validation") {
  auto sc = empty_field({1, 1}, {19, 19});
  CHECK_NOTHROW(validate(sc));
  sc.end = {25, 5};
  CHECK(code_of([&] { validate(sc); }) == ErrorCode::InvalidScenario);
  sc.end = {19, 19};
  sc.obstacles = {EllipseObstacle(1, {1, 1}, 2, 2, 0)};
  sc.initially_known = {true};
  CHECK(code_of([&] { validate(sc); }) == ErrorCode::InvalidScenario);
  sc.obstacles = {EllipseObstacle(1, {10, 10}, 2, 2, 0), EllipseObstacle(1, {5, 15}, 1, 1, 0)};
  sc.initially_known = {true, true};
  CHECK(code_of([&] { validate(sc); }) == ErrorCode::InvalidScenario);
}

TEST_CASE("generators are pure functions of their inputs") {
  for (auto kind : {EnvironmentKind::E1, EnvironmentKind::E2, EnvironmentKind::E3,
                    EnvironmentKind::E4, EnvironmentKind::E5}) {
    const auto a = generate_environment(kind, 100, 40, 5);
    const auto b = generate_environment(kind, 100, 40, 5);
    const auto c = generate_environment(kind, 100, 40, 6);
    CHECK(to_json(a) == to_json(b));
    CHECK(to_json(a) != to_json(c));
    CHECK(a.obstacles.size() == 40);
    CHECK_NOTHROW(validate(a));
  }
  CHECK(to_json(generate_popup_scenario(EnvironmentKind::E3, 100, 20, 3, 9)) ==
        to_json(generate_popup_scenario(EnvironmentKind::E3, 100, 20, 3, 9)));
}

TEST_CASE("dense non-overlapping class keeps circles apart") {
  const auto sc = generate_environment(EnvironmentKind::E3, 100, 60, 1);
  REQUIRE(sc.obstacles.size() == 60);
  for (std::size_t i = 0; i < sc.obstacles.size(); ++i) {
    const auto& a = sc.obstacles[i];
    CHECK(a.semi_major() == a.semi_minor());
    for (std::size_t j = i + 1; j < sc.obstacles.size(); ++j) {
      const auto& b = sc.obstacles[j];
      CHECK(distance(a.center(), b.center()) > a.effective_major() + b.effective_major());
    }
  }
}

TEST_CASE("overlapping classes overlap and the largest instance generates") {
  const auto sc = generate_environment(EnvironmentKind::E4, 200, 150, 1);
  CHECK(sc.obstacles.size() == 150);
  int overlaps = 0;
  for (std::size_t i = 0; i < sc.obstacles.size(); ++i) {
    for (std::size_t j = i + 1; j < sc.obstacles.size(); ++j) {
      const auto& a = sc.obstacles[i];
      const auto& b = sc.obstacles[j];
      if (distance(a.center(), b.center()) < a.effective_major() + b.effective_major()) ++overlaps;
    }
  }
  CHECK(overlaps > 0);
}

TEST_CASE("environment names parse") {
  CHECK(environment_from_string("E4") == EnvironmentKind::E4);
  CHECK_FALSE(environment_from_string("E9"));
  CHECK(std::string(to_string(EnvironmentKind::E1)) == "E1");
}

TEST_CASE("u trap facing the end blocks the straight line") {
  MazeSpec spec;
  spec.name = "trap";
  spec.start = {20, 50};
  spec.end = {80, 50};
  // Open side faces E, so S-E runs into the back wall behind the opening.
  spec.walls = u_trap({30, 50}, 16, 14, 0.0);
  spec.start = {30, 50};
  spec.walls = u_trap({45, 50}, 16, 14, std::numbers::pi);
  const auto sc = generate_maze(spec);
  CHECK(first_collided({sc.start, sc.end}, sc.obstacles, sc.default_eps()));
  CHECK(to_json(generate_maze(spec, 4)) == to_json(generate_maze(spec, 4)));
}

TEST_CASE("canned mazes are valid") {
  for (int i = 1; i <= kCannedMazeCount; ++i) {
    const auto sc = generate_maze(canned_maze(i));
    CHECK_NOTHROW(validate(sc));
    CHECK(first_collided({sc.start, sc.end}, sc.obstacles, sc.default_eps()));
  }
}

TEST_CASE("grid oracle on empty fields") {
  CHECK(*grid_astar_oracle(empty_field({0, 0}, {10, 0}), 1.0) == doctest::Approx(10.0));
  CHECK(*grid_astar_oracle(empty_field({0, 0}, {10, 10}), 1.0) == doctest::Approx(14.1421356));
  const auto off = empty_field({0.3, 0.2}, {17.6, 3.1});
  const double straight = distance(off.start, off.end);
  const double got = *grid_astar_oracle(off, 1.0);
  // Octile paths exceed the straight line by at most a factor 1.0824 plus
  // the two joins of at most half a cell diagonal each.
  CHECK(got >= straight);
  CHECK(got <= straight * 1.0824 + std::numbers::sqrt2);
  const auto diag = empty_field({0.2, 0.3}, {15.2, 15.3});
  CHECK(*grid_astar_oracle(diag, 1.0) <= distance(diag.start, diag.end) + std::numbers::sqrt2);
}

TEST_CASE("grid oracle matches dijkstra behind a wall with a gap") {
  Scenario sc = empty_field({2, 10}, {18, 10});
  // Wall along x = 10 built from small circles, with a gap near y = 16.
  int id = 1;
  for (double y = 0.5; y < 20; y += 1.0) {
    if (y > 15 && y < 18) continue;
    sc.obstacles.emplace_back(id++, Point2{10, y}, 0.8, 0.8, 0.0);
  }
  sc.initially_known.assign(sc.obstacles.size(), true);

  const double cell = 1.0;
  std::vector<std::vector<bool>> blocked(21, std::vector<bool>(21, false));
  for (int x = 0; x <= 20; ++x) {
    for (int y = 0; y <= 20; ++y) {
      for (const auto& o : sc.obstacles) {
        if (oracle::margin(o, {x * cell, y * cell}) < 0.0) blocked[x][y] = true;
      }
    }
  }
  const auto expect = oracle::grid_dijkstra(blocked, 2, 10, 18, 10, cell);
  const auto got = grid_astar_oracle(sc, cell);
  REQUIRE(expect);
  REQUIRE(got);
  CHECK(*got == doctest::Approx(*expect));
  CHECK(*got > 16.0 + 2.0);

  sc.obstacles.emplace_back(id, Point2{10, 16.5}, 2.0, 2.0, 0.0);
  sc.initially_known.push_back(true);
  CHECK_FALSE(grid_astar_oracle(sc, cell));
}

TEST_CASE("grid oracle is never shorter than the straight line") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto sc = generate_environment(EnvironmentKind::E4, 100, 40, seed);
    const auto len = grid_astar_oracle(sc, 1.0);
    if (len) CHECK(*len >= distance(sc.start, sc.end) - 1e-9);
  }
}

TEST_CASE("svg has one ellipse per obstacle and the route") {
  const auto sc = generate_popup_scenario(EnvironmentKind::E2, 100, 12, 2, 1);
  const std::string bare = render_svg(sc);
  CHECK(count_of(bare, "<ellipse") == sc.obstacles.size() + sc.popups.size());
  CHECK(count_of(bare, "<polyline") == 0);

  const auto plan = plan_static(sc);
  const auto curve = smooth(plan.route);
  const std::string full = render_svg(sc, plan.route, &curve);
  const std::regex points("<polyline[^>]*points=\"([^\"]*)\"");
  std::smatch m;
  REQUIRE(std::regex_search(full, m, points));
  CHECK(count_of(m[1].str(), ",") == plan.route.size());
  CHECK(count_of(full, "<path") == 1);
  CHECK(full == render_svg(sc, plan.route, &curve));
}

TEST_CASE("plan json is deterministic and omits timing by default") {
  const auto sc = generate_environment(EnvironmentKind::E3, 100, 30, 2);
  auto make = [&] {
    return to_json(assemble_output(plan_static(sc), sc.obstacles, sc.default_eps(), 20, {}));
  };
  const std::string a = make();
  CHECK(a == make());
  const auto j = nlohmann::json::parse(a);
  CHECK(j["time_s"].is_null());
  const auto out = assemble_output(plan_static(sc), sc.obstacles, sc.default_eps(), 20, {});
  CHECK(j["status"] == (out.curve_min_margin >= -sc.default_eps() ? "ok"
                                                                  : "curve_clearance_violated"));
  CHECK(j["route"].size() >= 2);
  const auto summary = plan_summary_from_json(a);
  CHECK(summary.route.size() == j["route"].size());
  CHECK(summary.route.front() == sc.start);
}

TEST_CASE("benchmark suite writes one row per scenario") {
  const auto dir = scratch_dir("bench");
  save_scenario(generate_environment(EnvironmentKind::E2, 100, 10, 1), (dir / "b.json").string());
  save_scenario(generate_environment(EnvironmentKind::E1, 100, 10, 2), (dir / "a.json").string());
  const auto rows = benchmark_suite(dir.string(), 1.0, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].instance == "E1_n10_f100_s2");
  CHECK(rows[0].seed == "2");
  CHECK(rows[0].env == "E1");
  CHECK(rows[0].status == "ok");
  CHECK(rows[0].oracle_km);
  const std::string csv = to_csv(rows);
  CHECK(csv.rfind("Instance,Env,Num_B,Path length(km),CPU(sec)", 0) == 0);
  CHECK(count_of(csv, "\n") == 3);
  fs::remove_all(dir);
}
