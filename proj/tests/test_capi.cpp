#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "tangentplan/tangentplan.h"

namespace fs = std::filesystem;

namespace {

struct Scenario {
  tp_scenario* p = nullptr;
  ~Scenario() { tp_scenario_free(p); }
};

struct Plan {
  tp_plan* p = nullptr;
  ~Plan() { tp_plan_free(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  tp_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(tp_version()) > 0);
  CHECK(std::string(tp_status_name(TP_OK)) == "OK");
  CHECK(std::string(tp_status_name(TP_ERR_DEAD_END)) != "OK");
}

TEST_CASE("null arguments are rejected") {
  tp_scenario* sc = nullptr;
  CHECK(tp_scenario_parse(nullptr, &sc) == TP_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(tp_last_error()) > 0);
  CHECK(tp_plan_run(nullptr, nullptr, nullptr) == TP_ERR_INVALID_ARGUMENT);
  tp_scenario_free(nullptr);
  tp_plan_free(nullptr);
  tp_string_free(nullptr);
}

TEST_CASE("load and parse errors map to codes") {
  tp_scenario* sc = nullptr;
  CHECK(tp_scenario_load("/nonexistent/x.json", &sc) == TP_ERR_IO);
  CHECK(sc == nullptr);
  CHECK(tp_scenario_parse("{oops", &sc) == TP_ERR_PARSE);
  CHECK(tp_generate_environment("E7", 100, 10, 1, 1, &sc) == TP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("generate, plan and read back waypoints") {
  Scenario sc;
  REQUIRE(tp_generate_environment("E3", 100, 30, 7, 1, &sc.p) == TP_OK);
  CHECK(tp_scenario_obstacle_count(sc.p) == 30);

  tp_plan_options opts;
  tp_plan_options_init(&opts);
  CHECK(opts.mode == TP_MODE_STATIC);
  CHECK(opts.step_km == 3.0);
  CHECK(opts.range_km == 10.0);

  Plan plan;
  REQUIRE(tp_plan_run(sc.p, &opts, &plan.p) == TP_OK);
  const std::size_t n = tp_plan_waypoint_count(plan.p);
  REQUIRE(n >= 2);
  std::vector<double> xy(2 * n);
  CHECK(tp_plan_waypoints(plan.p, xy.data(), n) == TP_OK);
  double length = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    length += std::hypot(xy[2 * i] - xy[2 * i - 2], xy[2 * i + 1] - xy[2 * i - 1]);
  }
  CHECK(tp_plan_length(plan.p) == doctest::Approx(length));
  CHECK(tp_plan_iterations(plan.p) >= 0);

  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(tp_plan_to_json(plan.p, &a) == TP_OK);
  Plan again;
  REQUIRE(tp_plan_run(sc.p, &opts, &again.p) == TP_OK);
  REQUIRE(tp_plan_to_json(again.p, &b) == TP_OK);
  CHECK(take(a) == take(b));
}

TEST_CASE("scenario text round trip") {
  Scenario sc;
  REQUIRE(tp_generate_popup_scenario("E2", 100, 15, 3, 2, &sc.p) == TP_OK);
  char* text = nullptr;
  REQUIRE(tp_scenario_to_json(sc.p, &text) == TP_OK);
  const std::string first = take(text);
  Scenario back;
  REQUIRE(tp_scenario_parse(first.c_str(), &back.p) == TP_OK);
  REQUIRE(tp_scenario_to_json(back.p, &text) == TP_OK);
  CHECK(take(text) == first);
}

TEST_CASE("online modes and option errors") {
  Scenario sc;
  REQUIRE(tp_generate_popup_scenario("E3", 100, 20, 3, 5, &sc.p) == TP_OK);
  tp_plan_options opts;
  tp_plan_options_init(&opts);
  opts.mode = TP_MODE_POPUP;
  Plan popup;
  const tp_status st = tp_plan_run(sc.p, &opts, &popup.p);
  CHECK((st == TP_OK || st == TP_ERR_PLANNING_FAILED));

  opts.mode = TP_MODE_UNKNOWN;
  opts.range_km = 2.0;
  Plan bad;
  CHECK(tp_plan_run(sc.p, &opts, &bad.p) == TP_ERR_INVALID_ARGUMENT);
  CHECK(bad.p == nullptr);

  opts.range_km = 10.0;
  opts.min_leg_km = 0.0;
  CHECK(tp_plan_run(sc.p, &opts, &bad.p) == TP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("files, rendering, oracle and bench") {
  const fs::path dir = fs::temp_directory_path() / "tangentplan_capi";
  fs::remove_all(dir);
  fs::create_directories(dir);
  Scenario sc;
  REQUIRE(tp_generate_maze(1, 0, &sc.p) == TP_OK);
  const std::string scen = (dir / "m1.json").string();
  REQUIRE(tp_scenario_save(sc.p, scen.c_str()) == TP_OK);

  Plan plan;
  REQUIRE(tp_plan_run(sc.p, nullptr, &plan.p) == TP_OK);
  const std::string plan_path = (dir / "m1.plan.json").string();
  REQUIRE(tp_plan_save(plan.p, plan_path.c_str()) == TP_OK);
  Plan loaded;
  REQUIRE(tp_plan_load(plan_path.c_str(), &loaded.p) == TP_OK);
  CHECK(tp_plan_waypoint_count(loaded.p) == tp_plan_waypoint_count(plan.p));

  const std::string svg = (dir / "m1.svg").string();
  CHECK(tp_render_svg(sc.p, loaded.p, svg.c_str()) == TP_OK);
  CHECK(tp_render_svg(sc.p, nullptr, svg.c_str()) == TP_OK);
  CHECK(fs::file_size(svg) > 0);
  CHECK(tp_render_svg(sc.p, nullptr, "/nonexistent/dir/x.svg") == TP_ERR_IO);

  double len = 0.0;
  int reachable = 0;
  REQUIRE(tp_grid_astar(sc.p, 1.0, &len, &reachable) == TP_OK);
  CHECK(reachable == 1);
  CHECK(len > 0.0);

  fs::remove(plan_path);
  fs::remove(svg);
  const std::string csv = (dir / "out.csv").string();
  REQUIRE(tp_bench_suite(dir.string().c_str(), 1.0, csv.c_str()) == TP_OK);
  CHECK(fs::file_size(csv) > 0);
  fs::remove_all(dir);
}
