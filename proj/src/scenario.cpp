#include "tangentplan/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tangentplan/error.hpp"

namespace tangentplan {

using ojson = nlohmann::ordered_json;

namespace {

ojson point_json(Point2 p) { return ojson::array({p.x, p.y}); }

Point2 point_from(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::Parse, std::string(what) + ": expected [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ojson obstacle_json(const EllipseObstacle& o) {
  ojson j;
  j["id"] = o.id();
  j["center"] = point_json(o.center());
  j["a"] = o.semi_major();
  j["b"] = o.semi_minor();
  j["theta"] = o.inclination();
  return j;
}

EllipseObstacle obstacle_from(const nlohmann::json& j, double r_safe) {
  try {
    return EllipseObstacle(j.at("id").get<int>(), point_from(j.at("center"), "center"),
                           j.at("a").get<double>(), j.at("b").get<double>(),
                           j.value("theta", 0.0), r_safe);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidScenario, e.what());
  }
}

}  // namespace

void validate(const Scenario& sc) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidScenario, msg); };
  if (!(sc.bounds.width > 0.0) || !(sc.bounds.height > 0.0)) fail("bounds must be positive");
  if (!is_finite(sc.start) || !is_finite(sc.end)) fail("start/end must be finite");
  if (!sc.bounds.contains(sc.start)) fail("start outside bounds");
  if (!sc.bounds.contains(sc.end)) fail("end outside bounds");
  if (sc.initially_known.size() != sc.obstacles.size()) fail("known flags do not match obstacles");
  std::set<int> ids;
  auto check = [&](const EllipseObstacle& o) {
    if (!ids.insert(o.id()).second) fail("duplicate obstacle id " + std::to_string(o.id()));
    if (!(signed_margin(o, sc.start) > 0.0)) {
      fail("start inside inflated obstacle " + std::to_string(o.id()));
    }
    if (!(signed_margin(o, sc.end) > 0.0)) {
      fail("end inside inflated obstacle " + std::to_string(o.id()));
    }
  };
  for (const auto& o : sc.obstacles) check(o);
  for (const auto& p : sc.popups) {
    if (p.trigger_time && !(*p.trigger_time >= 0.0)) fail("negative pop-up trigger time");
    check(p.obstacle);
  }
}

std::string to_json(const Scenario& sc) {
  ojson j;
  j["name"] = sc.name;
  j["bounds"] = {{"w", sc.bounds.width}, {"h", sc.bounds.height}};
  j["start"] = point_json(sc.start);
  j["end"] = point_json(sc.end);
  j["r_safe"] = sc.safety_margin;
  ojson obs = ojson::array();
  for (std::size_t i = 0; i < sc.obstacles.size(); ++i) {
    ojson o = obstacle_json(sc.obstacles[i]);
    o["known"] = static_cast<bool>(sc.initially_known[i]);
    obs.push_back(std::move(o));
  }
  j["obstacles"] = std::move(obs);
  ojson pops = ojson::array();
  for (const auto& p : sc.popups) {
    ojson e;
    if (p.trigger_time) {
      e["trigger"] = *p.trigger_time;
    } else {
      e["trigger"] = "visible";
    }
    e["obstacle"] = obstacle_json(p.obstacle);
    pops.push_back(std::move(e));
  }
  j["popups"] = std::move(pops);
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("scenario JSON: ") + e.what());
  }
  Scenario sc;
  try {
    sc.name = j.value("name", std::string{});
    const auto& b = j.at("bounds");
    sc.bounds = {b.at("w").get<double>(), b.at("h").get<double>()};
    sc.start = point_from(j.at("start"), "start");
    sc.end = point_from(j.at("end"), "end");
    sc.safety_margin = j.value("r_safe", 0.0);
    if (!(sc.safety_margin >= 0.0)) throw Error(ErrorCode::InvalidScenario, "negative r_safe");
    for (const auto& o : j.value("obstacles", nlohmann::json::array())) {
      sc.obstacles.push_back(obstacle_from(o, sc.safety_margin));
      sc.initially_known.push_back(o.value("known", true));
    }
    for (const auto& p : j.value("popups", nlohmann::json::array())) {
      PopupEvent ev{std::nullopt, obstacle_from(p.at("obstacle"), sc.safety_margin)};
      const auto& trig = p.at("trigger");
      if (trig.is_number()) {
        ev.trigger_time = trig.get<double>();
      } else if (!(trig.is_string() && trig.get<std::string>() == "visible")) {
        throw Error(ErrorCode::Parse, "pop-up trigger must be a time or \"visible\"");
      }
      sc.popups.push_back(std::move(ev));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("scenario JSON: ") + e.what());
  }
  validate(sc);
  return sc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path);
}

Scenario load_scenario(const std::string& path) { return scenario_from_json(read_text_file(path)); }

void save_scenario(const Scenario& scenario, const std::string& path) {
  write_text_file(path, to_json(scenario));
}

}  // namespace tangentplan
