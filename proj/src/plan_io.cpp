#include "tangentplan/plan_io.hpp"

#include <json.hpp>

#include "tangentplan/error.hpp"

namespace tangentplan {

using ojson = nlohmann::ordered_json;

namespace {

ojson pt(Point2 p) { return ojson::array({p.x, p.y}); }

ojson points(std::span<const Point2> ps) {
  ojson a = ojson::array();
  for (auto p : ps) a.push_back(pt(p));
  return a;
}

ojson trace_json(const TraceRecord& r) {
  ojson j;
  j["origin"] = pt(r.origin);
  j["destination"] = pt(r.destination);
  j["obstacle"] = r.obstacle_id;
  ojson cands = ojson::array();
  for (int k = 0; k < 2; ++k) {
    ojson c;
    c["side"] = k == 0 ? "left" : "right";
    c["waypoint"] = pt(r.candidates[k].waypoint);
    c["length_km"] = r.candidates[k].length;
    c["usable"] = r.usable[k];
    c["cluster"] = r.cluster_size[k];
    cands.push_back(std::move(c));
  }
  j["candidates"] = std::move(cands);
  j["chosen"] = r.chosen;
  j["rule"] = r.rule;
  j["tie_break"] = r.tie_break;
  j["perturbed"] = r.perturbed;
  j["waypoint"] = pt(r.waypoint);
  j["placed"] = r.determined ? "determined" : "candidate";
  if (r.waypoint_obstacle_id) {
    j["waypoint_obstacle"] = *r.waypoint_obstacle_id;
  } else {
    j["waypoint_obstacle"] = nullptr;
  }
  return j;
}

}  // namespace

PlanOutput assemble_output(PathPlan plan, std::span<const EllipseObstacle> obstacles, double eps,
                           int samples_per_segment, const ConstraintLimits& limits) {
  PlanOutput out;
  out.curve = smooth(plan.route, samples_per_segment);
  out.constraints = check(plan, out.curve, limits);
  out.curve_min_margin = obstacles.empty() ? 0.0 : min_clearance(out.curve, obstacles);
  out.curve_clear = obstacles.empty() || out.curve_min_margin >= -eps;
  out.plan = std::move(plan);
  return out;
}

std::string status_of(const PlanOutput& out) {
  return out.curve_clear ? "ok" : "curve_clearance_violated";
}

std::string to_json(const PlanOutput& out) {
  ojson j;
  j["route"] = points(out.plan.route);
  j["length_km"] = out.plan.length;
  if (out.time_s) {
    j["time_s"] = *out.time_s;
  } else {
    j["time_s"] = nullptr;
  }
  j["iterations"] = out.plan.iterations;
  ojson trace = ojson::array();
  for (const auto& r : out.plan.trace) trace.push_back(trace_json(r));
  j["trace"] = std::move(trace);

  const auto& c = out.constraints;
  ojson cj;
  cj["total_length_km"] = c.total_length;
  cj["range_ok"] = c.range_ok;
  cj["min_leg_km"] = c.min_leg;
  cj["leg_ok"] = c.leg_ok;
  cj["max_curvature_per_km"] = c.max_curvature;
  cj["turn_ok"] = c.turn_ok;
  cj["samples_per_segment"] = out.curve.samples_per_segment;
  cj["curve_min_margin"] = out.curve_min_margin;
  cj["curve_clear"] = out.curve_clear;
  j["constraints"] = std::move(cj);
  j["status"] = status_of(out);

  if (out.flight) {
    const auto& f = *out.flight;
    ojson fj;
    fj["visited"] = points(f.visited);
    ojson per = ojson::array();
    for (const auto& e : f.perception_events) {
      per.push_back({{"visit", e.visit}, {"ids", e.ids}});
    }
    fj["perception"] = std::move(per);
    ojson rep = ojson::array();
    for (const auto& e : f.replan_events) {
      ojson r;
      r["position"] = pt(e.position);
      r["conflict_index"] = e.conflict_index;
      r["conflict"] = points(std::vector<Point2>{e.conflict.p, e.conflict.q});
      r["sub_route"] = points(e.sub_route);
      if (out.include_latency) {
        r["elapsed_s"] = e.elapsed_s;
      } else {
        r["elapsed_s"] = nullptr;
      }
      rep.push_back(std::move(r));
    }
    fj["replans"] = std::move(rep);
    j["flight"] = std::move(fj);
  }
  return j.dump(2) + "\n";
}

PlanSummary plan_summary_from_json(const std::string& text) {
  PlanSummary s;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& p : j.at("route")) s.route.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    if (j.contains("constraints")) {
      s.samples_per_segment = j["constraints"].value("samples_per_segment", 20);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("plan JSON: ") + e.what());
  }
  return s;
}

}  // namespace tangentplan
