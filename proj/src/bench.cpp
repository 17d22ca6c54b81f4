#include "tangentplan/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <regex>

#include "tangentplan/error.hpp"
#include "tangentplan/grid_astar.hpp"

namespace tangentplan {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

double median_plan_time(const Scenario& scenario, const PlannerConfig& config, int runs) {
  if (runs < 1) throw Error(ErrorCode::InvalidArgument, "runs must be >= 1");
  std::vector<double> times;
  for (int i = 0; i < runs; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const PathPlan plan = plan_static(scenario, config);
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
    (void)plan;
  }
  std::sort(times.begin(), times.end());
  const std::size_t n = times.size();
  return n % 2 ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
}

BenchmarkRow benchmark_instance(const Scenario& scenario, double oracle_cell, int runs) {
  BenchmarkRow row;
  row.instance = scenario.name;
  row.num_obstacles = static_cast<int>(scenario.obstacles.size());
  // Generated names look like E3_n60_f100_s42.
  static const std::regex pattern(R"(^(E[1-5])_n\d+_f\d+_s(\d+)$)");
  std::smatch m;
  if (std::regex_match(scenario.name, m, pattern)) {
    row.env = m[1];
    row.seed = m[2];
  } else {
    row.env = "custom";
  }
  try {
    const PathPlan plan = plan_static(scenario);
    row.length_km = plan.length;
    row.iterations = plan.iterations;
    row.cpu_s = median_plan_time(scenario, {}, runs);
    row.status = "ok";
  } catch (const Error& e) {
    row.status = to_string(e.code());
  }
  row.oracle_km = grid_astar_oracle(scenario, oracle_cell);
  return row;
}

std::vector<BenchmarkRow> benchmark_suite(const std::string& dir, double oracle_cell, int runs) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::Io, "not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchmarkRow> rows;
  for (const auto& f : files) {
    BenchmarkRow row;
    try {
      row = benchmark_instance(load_scenario(f.string()), oracle_cell, runs);
    } catch (const Error& e) {
      row.instance = f.stem().string();
      row.env = "custom";
      row.status = to_string(e.code());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_csv(std::span<const BenchmarkRow> rows) {
  std::string out =
      "Instance,Env,Num_B,Path length(km),CPU(sec),Iterations,Oracle A*(km),Seed,Status\n";
  for (const auto& r : rows) {
    out += csv_field(r.instance) + "," + r.env + "," + std::to_string(r.num_obstacles) + "," +
           (r.length_km ? fixed(*r.length_km, 2) : "") + "," + fixed(r.cpu_s, 4) + "," +
           std::to_string(r.iterations) + "," + (r.oracle_km ? fixed(*r.oracle_km, 2) : "") +
           "," + r.seed + "," + r.status + "\n";
  }
  return out;
}

}  // namespace tangentplan
