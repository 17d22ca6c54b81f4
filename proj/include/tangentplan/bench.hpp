#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tangentplan/planner_static.hpp"
#include "tangentplan/scenario.hpp"

namespace tangentplan {

/// One benchmark line: instance, environment class, obstacle count, path
/// length, planning time, plus iterations, grid-oracle length, seed and
/// status.
struct BenchmarkRow {
  std::string instance;
  std::string env;
  int num_obstacles = 0;
  std::optional<double> length_km;
  double cpu_s = 0.0;
  int iterations = 0;
  std::optional<double> oracle_km;
  std::string seed;
  std::string status;
};

/// Median wall-clock seconds of `runs` plan_static calls (I/O excluded).
/// Throws whatever plan_static throws.
double median_plan_time(const Scenario& scenario, const PlannerConfig& config = {}, int runs = 5);

/// Plans, times and runs the grid oracle; failures become the row status.
BenchmarkRow benchmark_instance(const Scenario& scenario, double oracle_cell, int runs = 5);

/// Every *.json scenario in `dir`, in file-name order.
std::vector<BenchmarkRow> benchmark_suite(const std::string& dir, double oracle_cell,
                                          int runs = 5);

std::string to_csv(std::span<const BenchmarkRow> rows);

}  // namespace tangentplan
