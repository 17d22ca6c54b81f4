/*
 * C interface of the tangentplan library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a tp_status; on
 * failure tp_last_error() describes the problem (thread-local, valid until
 * the next call on the same thread). Strings returned through char** are
 * released with tp_string_free().
 */
#ifndef TANGENTPLAN_H
#define TANGENTPLAN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TANGENTPLAN_BUILDING)
#    define TP_API __declspec(dllexport)
#  else
#    define TP_API __declspec(dllimport)
#  endif
#else
#  define TP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tp_status {
  TP_OK = 0,
  TP_ERR_INVALID_ARGUMENT = 1,
  TP_ERR_INVALID_SCENARIO = 2,
  TP_ERR_POINT_INSIDE_OBSTACLE = 3,
  TP_ERR_DEGENERATE_TANGENCY = 4,
  TP_ERR_PLANNING_FAILED = 5,
  TP_ERR_DEAD_END = 6,
  TP_ERR_GENERATION_FAILED = 7,
  TP_ERR_TOO_FEW_WAYPOINTS = 8,
  TP_ERR_TOO_FEW_SAMPLES = 9,
  TP_ERR_IO = 10,
  TP_ERR_PARSE = 11,
  TP_ERR_INTERNAL = 12
} tp_status;

typedef enum tp_mode {
  TP_MODE_STATIC = 0,  /* offline planner, full knowledge */
  TP_MODE_UNKNOWN = 1, /* online planner in an initially empty map */
  TP_MODE_POPUP = 2    /* fly the offline plan, re-plan around pop-ups */
} tp_mode;

typedef struct tp_scenario tp_scenario;
typedef struct tp_plan tp_plan;

typedef struct tp_plan_options {
  tp_mode mode;
  double step_km;          /* limited flight distance (online modes) */
  double range_km;         /* sensor range (online modes) */
  int samples_per_segment; /* B-spline samples per control quadruple */
  double eps;              /* <= 0 selects 1e-9 x field diagonal */
  int max_iterations;      /* <= 0 selects 50 x obstacle count */
  double max_range_km;
  double min_leg_km;
  double min_turn_radius_km;
  int timing_runs;         /* 0 leaves time_s null; n > 0 records the median of n runs */
} tp_plan_options;

TP_API const char* tp_version(void);
TP_API const char* tp_status_name(tp_status status);
TP_API const char* tp_last_error(void);
TP_API void tp_string_free(char* s);

/* Defaults: static mode, 3 km step, 10 km range, 20 samples, 300 km range
 * limit, 0.5 km minimum leg, 0.2 km minimum turning radius, no timing. */
TP_API void tp_plan_options_init(tp_plan_options* opts);

TP_API tp_status tp_scenario_load(const char* path, tp_scenario** out);
TP_API tp_status tp_scenario_parse(const char* json, tp_scenario** out);
TP_API tp_status tp_scenario_save(const tp_scenario* scenario, const char* path);
TP_API tp_status tp_scenario_to_json(const tp_scenario* scenario, char** out);
TP_API size_t tp_scenario_obstacle_count(const tp_scenario* scenario);
TP_API void tp_scenario_free(tp_scenario* scenario);

/* kind is "E1".."E5"; known sets every obstacle's initially-known flag. */
TP_API tp_status tp_generate_environment(const char* kind, double field_km, int count,
                                         uint64_t seed, int known, tp_scenario** out);
/* Known environment plus `popups` pop-up obstacles near its offline route. */
TP_API tp_status tp_generate_popup_scenario(const char* kind, double field_km, int count,
                                            int popups, uint64_t seed, tp_scenario** out);
/* index 1..6 selects a canned maze. */
TP_API tp_status tp_generate_maze(int index, uint64_t seed, tp_scenario** out);

TP_API tp_status tp_plan_run(const tp_scenario* scenario, const tp_plan_options* opts,
                             tp_plan** out);
/* Reads the route of a plan file (enough for rendering). */
TP_API tp_status tp_plan_load(const char* path, tp_plan** out);
TP_API double tp_plan_length(const tp_plan* plan);
TP_API int tp_plan_iterations(const tp_plan* plan);
TP_API size_t tp_plan_waypoint_count(const tp_plan* plan);
/* Copies up to capacity (x, y) pairs into xy. */
TP_API tp_status tp_plan_waypoints(const tp_plan* plan, double* xy, size_t capacity);
TP_API tp_status tp_plan_to_json(const tp_plan* plan, char** out);
TP_API tp_status tp_plan_save(const tp_plan* plan, const char* path);
TP_API void tp_plan_free(tp_plan* plan);

/* plan may be NULL. */
TP_API tp_status tp_render_svg(const tp_scenario* scenario, const tp_plan* plan,
                               const char* path);
/* *reachable is set to 0 when no grid path exists. */
TP_API tp_status tp_grid_astar(const tp_scenario* scenario, double cell_km, double* length_km,
                               int* reachable);
TP_API tp_status tp_bench_suite(const char* dir, double oracle_cell_km, const char* csv_path);

#ifdef __cplusplus
}
#endif

#endif /* TANGENTPLAN_H */
