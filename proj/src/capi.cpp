#include "tangentplan/tangentplan.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <string>

#include "tangentplan/bench.hpp"
#include "tangentplan/error.hpp"
#include "tangentplan/generators.hpp"
#include "tangentplan/grid_astar.hpp"
#include "tangentplan/plan_io.hpp"
#include "tangentplan/planner_dynamic.hpp"
#include "tangentplan/render.hpp"

using namespace tangentplan;

struct tp_scenario {
  Scenario value;
};

struct tp_plan {
  PlanOutput output;
};

namespace {

thread_local std::string g_last_error;

tp_status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return TP_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidScenario: return TP_ERR_INVALID_SCENARIO;
    case ErrorCode::PointInsideObstacle: return TP_ERR_POINT_INSIDE_OBSTACLE;
    case ErrorCode::DegenerateTangency: return TP_ERR_DEGENERATE_TANGENCY;
    case ErrorCode::PlanningFailed: return TP_ERR_PLANNING_FAILED;
    case ErrorCode::DeadEnd: return TP_ERR_DEAD_END;
    case ErrorCode::GenerationFailed: return TP_ERR_GENERATION_FAILED;
    case ErrorCode::TooFewWaypoints: return TP_ERR_TOO_FEW_WAYPOINTS;
    case ErrorCode::TooFewSamples: return TP_ERR_TOO_FEW_SAMPLES;
    case ErrorCode::Io: return TP_ERR_IO;
    case ErrorCode::Parse: return TP_ERR_PARSE;
  }
  return TP_ERR_INTERNAL;
}

template <class F>
tp_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return TP_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return TP_ERR_INTERNAL;
  }
}

tp_status null_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return TP_ERR_INVALID_ARGUMENT;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

PlannerConfig planner_config(const tp_plan_options& o) {
  PlannerConfig c;
  if (o.eps > 0.0) c.eps = o.eps;
  if (o.max_iterations > 0) c.max_iterations = o.max_iterations;
  return c;
}

DynamicResult run_online(const Scenario& sc, const tp_plan_options& o) {
  const PlannerConfig config = planner_config(o);
  const SensorModel sensor{o.range_km};
  if (o.mode == TP_MODE_UNKNOWN) return plan_unknown(sc, o.step_km, sensor, config);
  const Scenario offline_sc = offline_view(sc);
  const PathPlan offline = plan_static(offline_sc, config);
  return replan_popup(sc, offline, sc.popups, sensor, config, o.step_km);
}

template <class F>
double median_seconds(int runs, F&& f) {
  std::vector<double> t;
  for (int i = 0; i < runs; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(t.begin(), t.end());
  const std::size_t n = t.size();
  return n % 2 ? t[n / 2] : 0.5 * (t[n / 2 - 1] + t[n / 2]);
}

}  // namespace

extern "C" {

const char* tp_version(void) { return "1.0.0"; }

const char* tp_status_name(tp_status status) {
  switch (status) {
    case TP_OK: return "OK";
    case TP_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case TP_ERR_INVALID_SCENARIO: return "InvalidScenario";
    case TP_ERR_POINT_INSIDE_OBSTACLE: return "PointInsideObstacle";
    case TP_ERR_DEGENERATE_TANGENCY: return "DegenerateTangency";
    case TP_ERR_PLANNING_FAILED: return "PlanningFailed";
    case TP_ERR_DEAD_END: return "DeadEnd";
    case TP_ERR_GENERATION_FAILED: return "GenerationFailed";
    case TP_ERR_TOO_FEW_WAYPOINTS: return "TooFewWaypoints";
    case TP_ERR_TOO_FEW_SAMPLES: return "TooFewSamples";
    case TP_ERR_IO: return "Io";
    case TP_ERR_PARSE: return "Parse";
    case TP_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* tp_last_error(void) { return g_last_error.c_str(); }

void tp_string_free(char* s) { std::free(s); }

void tp_plan_options_init(tp_plan_options* opts) {
  if (!opts) return;
  opts->mode = TP_MODE_STATIC;
  opts->step_km = 3.0;
  opts->range_km = 10.0;
  opts->samples_per_segment = 20;
  opts->eps = 0.0;
  opts->max_iterations = 0;
  const ConstraintLimits limits;
  opts->max_range_km = limits.max_range;
  opts->min_leg_km = limits.min_leg;
  opts->min_turn_radius_km = limits.min_turn_radius;
  opts->timing_runs = 0;
}

tp_status tp_scenario_load(const char* path, tp_scenario** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new tp_scenario{load_scenario(path)}; });
}

tp_status tp_scenario_parse(const char* json, tp_scenario** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new tp_scenario{scenario_from_json(json)}; });
}

tp_status tp_scenario_save(const tp_scenario* scenario, const char* path) {
  if (!scenario) return null_argument("scenario");
  if (!path) return null_argument("path");
  return guarded([&] { save_scenario(scenario->value, path); });
}

tp_status tp_scenario_to_json(const tp_scenario* scenario, char** out) {
  if (!scenario) return null_argument("scenario");
  if (!out) return null_argument("out");
  return guarded([&] { *out = duplicate(to_json(scenario->value)); });
}

size_t tp_scenario_obstacle_count(const tp_scenario* scenario) {
  return scenario ? scenario->value.obstacles.size() : 0;
}

void tp_scenario_free(tp_scenario* scenario) { delete scenario; }

tp_status tp_generate_environment(const char* kind, double field_km, int count, uint64_t seed,
                                  int known, tp_scenario** out) {
  if (!kind) return null_argument("kind");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto k = environment_from_string(kind);
    if (!k) throw Error(ErrorCode::InvalidArgument, std::string("unknown environment ") + kind);
    *out = new tp_scenario{generate_environment(*k, field_km, count, seed, known != 0)};
  });
}

tp_status tp_generate_popup_scenario(const char* kind, double field_km, int count, int popups,
                                     uint64_t seed, tp_scenario** out) {
  if (!kind) return null_argument("kind");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto k = environment_from_string(kind);
    if (!k) throw Error(ErrorCode::InvalidArgument, std::string("unknown environment ") + kind);
    *out = new tp_scenario{generate_popup_scenario(*k, field_km, count, popups, seed)};
  });
}

tp_status tp_generate_maze(int index, uint64_t seed, tp_scenario** out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = new tp_scenario{generate_maze(canned_maze(index), seed)}; });
}

tp_status tp_plan_run(const tp_scenario* scenario, const tp_plan_options* opts, tp_plan** out) {
  if (!scenario) return null_argument("scenario");
  if (!out) return null_argument("out");
  tp_plan_options o;
  tp_plan_options_init(&o);
  if (opts) o = *opts;
  return guarded([&] {
    const Scenario& sc = scenario->value;
    const ConstraintLimits limits{o.max_range_km, o.min_leg_km, o.min_turn_radius_km};
    validate(limits);
    const double eps = o.eps > 0.0 ? o.eps : sc.default_eps();
    std::optional<double> seconds;
    PlanOutput output;
    if (o.mode == TP_MODE_STATIC) {
      PathPlan plan = plan_static(sc, planner_config(o));
      if (o.timing_runs > 0) {
        seconds = median_seconds(o.timing_runs, [&] { (void)plan_static(sc, planner_config(o)); });
      }
      output = assemble_output(std::move(plan), sc.obstacles, eps, o.samples_per_segment, limits);
    } else if (o.mode == TP_MODE_UNKNOWN || o.mode == TP_MODE_POPUP) {
      DynamicResult res = run_online(sc, o);
      if (o.timing_runs > 0) {
        seconds = median_seconds(o.timing_runs, [&] { (void)run_online(sc, o); });
      }
      const auto truth = active_obstacles(sc, sc.popups, std::numeric_limits<double>::infinity());
      output = assemble_output(std::move(res.plan), truth, eps, o.samples_per_segment, limits);
      output.flight = std::move(res.log);
      output.include_latency = o.timing_runs > 0;
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown planning mode");
    }
    output.time_s = seconds;
    *out = new tp_plan{std::move(output)};
  });
}

tp_status tp_plan_load(const char* path, tp_plan** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] {
    PlanSummary s = plan_summary_from_json(read_text_file(path));
    PathPlan plan;
    plan.route = std::move(s.route);
    for (std::size_t i = 1; i < plan.route.size(); ++i) {
      plan.length += distance(plan.route[i - 1], plan.route[i]);
    }
    PlanOutput output;
    if (plan.route.size() >= 2) {
      output = assemble_output(std::move(plan), {}, 0.0, s.samples_per_segment, {});
    } else {
      output.plan = std::move(plan);
    }
    *out = new tp_plan{std::move(output)};
  });
}

double tp_plan_length(const tp_plan* plan) { return plan ? plan->output.plan.length : 0.0; }

int tp_plan_iterations(const tp_plan* plan) { return plan ? plan->output.plan.iterations : 0; }

size_t tp_plan_waypoint_count(const tp_plan* plan) {
  return plan ? plan->output.plan.route.size() : 0;
}

tp_status tp_plan_waypoints(const tp_plan* plan, double* xy, size_t capacity) {
  if (!plan) return null_argument("plan");
  if (!xy && capacity > 0) return null_argument("xy");
  const auto& route = plan->output.plan.route;
  for (size_t i = 0; i < route.size() && i < capacity; ++i) {
    xy[2 * i] = route[i].x;
    xy[2 * i + 1] = route[i].y;
  }
  return TP_OK;
}

tp_status tp_plan_to_json(const tp_plan* plan, char** out) {
  if (!plan) return null_argument("plan");
  if (!out) return null_argument("out");
  return guarded([&] { *out = duplicate(to_json(plan->output)); });
}

tp_status tp_plan_save(const tp_plan* plan, const char* path) {
  if (!plan) return null_argument("plan");
  if (!path) return null_argument("path");
  return guarded([&] { write_text_file(path, to_json(plan->output)); });
}

void tp_plan_free(tp_plan* plan) { delete plan; }

tp_status tp_render_svg(const tp_scenario* scenario, const tp_plan* plan, const char* path) {
  if (!scenario) return null_argument("scenario");
  if (!path) return null_argument("path");
  return guarded([&] {
    if (plan) {
      const auto& out = plan->output;
      render_svg_file(path, scenario->value, out.plan.route,
                      out.curve.samples.empty() ? nullptr : &out.curve);
    } else {
      render_svg_file(path, scenario->value);
    }
  });
}

tp_status tp_grid_astar(const tp_scenario* scenario, double cell_km, double* length_km,
                        int* reachable) {
  if (!scenario) return null_argument("scenario");
  if (!length_km) return null_argument("length_km");
  if (!reachable) return null_argument("reachable");
  return guarded([&] {
    const auto len = grid_astar_oracle(scenario->value, cell_km);
    *reachable = len ? 1 : 0;
    *length_km = len.value_or(0.0);
  });
}

tp_status tp_bench_suite(const char* dir, double oracle_cell_km, const char* csv_path) {
  if (!dir) return null_argument("dir");
  if (!csv_path) return null_argument("csv_path");
  return guarded([&] {
    const auto rows = benchmark_suite(dir, oracle_cell_km);
    write_text_file(csv_path, to_csv(rows));
  });
}

}  // extern "C"
