// Command-line front end. Talks to the library only through the C API.
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "tangentplan/tangentplan.h"

namespace {

int fail(tp_status st) {
  std::fprintf(stderr, "error: %s: %s\n", tp_status_name(st), tp_last_error());
  return 1;
}

struct ScenarioHandle {
  tp_scenario* p = nullptr;
  ~ScenarioHandle() { tp_scenario_free(p); }
};

struct PlanHandle {
  tp_plan* p = nullptr;
  ~PlanHandle() { tp_plan_free(p); }
};

struct PlanArgs {
  std::string scenario;
  std::string mode = "static";
  double step = 3.0;
  double range = 10.0;
  int samples = 20;
  int timing = 0;
  std::string out;
  std::string svg;
};

int run_plan(const PlanArgs& a, tp_mode mode) {
  ScenarioHandle sc;
  if (auto st = tp_scenario_load(a.scenario.c_str(), &sc.p)) return fail(st);
  tp_plan_options opts;
  tp_plan_options_init(&opts);
  opts.mode = mode;
  opts.step_km = a.step;
  opts.range_km = a.range;
  opts.samples_per_segment = a.samples;
  opts.timing_runs = a.timing;
  PlanHandle plan;
  if (auto st = tp_plan_run(sc.p, &opts, &plan.p)) return fail(st);
  if (a.out.empty()) {
    char* json = nullptr;
    if (auto st = tp_plan_to_json(plan.p, &json)) return fail(st);
    std::fputs(json, stdout);
    std::fputc('\n', stdout);
    tp_string_free(json);
  } else if (auto st = tp_plan_save(plan.p, a.out.c_str())) {
    return fail(st);
  }
  if (!a.svg.empty()) {
    if (auto st = tp_render_svg(sc.p, plan.p, a.svg.c_str())) return fail(st);
  }
  std::fprintf(stderr, "length %.3f km, %zu waypoints, %d iterations\n", tp_plan_length(plan.p),
               tp_plan_waypoint_count(plan.p), tp_plan_iterations(plan.p));
  return 0;
}

void add_common(CLI::App* cmd, PlanArgs& a) {
  cmd->add_option("--scenario", a.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--l", a.step, "Limited flight distance per step, km")->check(CLI::PositiveNumber);
  cmd->add_option("--range", a.range, "Sensor range, km")->check(CLI::PositiveNumber);
  cmd->add_option("--smooth", a.samples, "B-spline samples per segment")->check(CLI::Range(2, 100000));
  cmd->add_flag("--timing", a.timing, "Record the median CPU time of 5 runs");
  cmd->add_option("--out", a.out, "Plan JSON output (stdout if omitted)");
  cmd->add_option("--svg", a.svg, "Also render the result to this SVG file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tangent-graph UAV path planner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tp_version()));

  PlanArgs plan_args;
  auto* plan = app.add_subcommand("plan", "Plan a route for a scenario");
  add_common(plan, plan_args);
  plan->add_option("--mode", plan_args.mode, "static or unknown")
      ->check(CLI::IsMember({"static", "unknown"}));

  PlanArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Fly the offline plan and re-plan around pop-ups");
  add_common(simulate, sim_args);

  std::string env;
  int count = 40;
  double field = 100.0;
  std::uint64_t seed = 1;
  bool unknown = false;
  int popups = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a scenario");
  gen->add_option("--env", env, "E1..E5 or maze")
      ->required()
      ->check(CLI::IsMember({"E1", "E2", "E3", "E4", "E5", "maze"}));
  gen->add_option("--n", count, "Obstacle count (maze index 1..6 for --env maze)");
  gen->add_option("--field", field, "Field size, km")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Random seed");
  gen->add_flag("--unknown", unknown, "Mark every obstacle as initially unknown");
  gen->add_option("--popups", popups, "Add this many pop-up obstacles near the offline route")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--out", gen_out, "Scenario JSON output")->required();

  std::string suite;
  double cell = 1.0;
  std::string csv;
  auto* bench = app.add_subcommand("bench", "Benchmark every scenario in a directory");
  bench->add_option("--suite", suite, "Directory of scenario JSON files")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench->add_option("--oracle-cell", cell, "Grid A* cell size, km")->check(CLI::PositiveNumber);
  bench->add_option("--out", csv, "CSV output")->required();

  std::string render_scenario;
  std::string render_plan;
  std::string render_out;
  auto* render = app.add_subcommand("render", "Draw a scenario and optionally a plan as SVG");
  render->add_option("--scenario", render_scenario, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  render->add_option("--plan", render_plan, "Plan JSON file")->check(CLI::ExistingFile);
  render->add_option("--out", render_out, "SVG output")->required();

  CLI11_PARSE(app, argc, argv);

  if (plan_args.timing) plan_args.timing = 5;
  if (sim_args.timing) sim_args.timing = 5;

  if (*plan) {
    return run_plan(plan_args, plan_args.mode == "unknown" ? TP_MODE_UNKNOWN : TP_MODE_STATIC);
  }
  if (*simulate) return run_plan(sim_args, TP_MODE_POPUP);
  if (*gen) {
    ScenarioHandle sc;
    tp_status st;
    if (env == "maze") {
      st = tp_generate_maze(count, seed, &sc.p);
    } else if (popups > 0) {
      st = tp_generate_popup_scenario(env.c_str(), field, count, popups, seed, &sc.p);
    } else {
      st = tp_generate_environment(env.c_str(), field, count, seed, unknown ? 0 : 1, &sc.p);
    }
    if (st) return fail(st);
    if (auto s = tp_scenario_save(sc.p, gen_out.c_str())) return fail(s);
    return 0;
  }
  if (*bench) {
    if (auto st = tp_bench_suite(suite.c_str(), cell, csv.c_str())) return fail(st);
    return 0;
  }
  if (*render) {
    ScenarioHandle sc;
    if (auto st = tp_scenario_load(render_scenario.c_str(), &sc.p)) return fail(st);
    PlanHandle p;
    if (!render_plan.empty()) {
      if (auto st = tp_plan_load(render_plan.c_str(), &p.p)) return fail(st);
    }
    if (auto st = tp_render_svg(sc.p, p.p, render_out.c_str())) return fail(st);
    return 0;
  }
  return 0;
}
