#include "tangentplan/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace tangentplan {

namespace {

constexpr double kCanvas = 800.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  return s == "-0.000" ? "0.000" : s;
}

struct View {
  double scale;
  double height;
  double x(double wx) const { return wx * scale; }
  double y(double wy) const { return (height - wy) * scale; }
};

std::string ellipse(const View& v, const EllipseObstacle& o, const char* fill) {
  const double cx = v.x(o.center().x);
  const double cy = v.y(o.center().y);
  // SVG y points down, so the rotation flips sign.
  const double deg = -o.inclination() * 180.0 / std::numbers::pi;
  return "  <ellipse cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" rx=\"" +
         num(o.effective_major() * v.scale) + "\" ry=\"" + num(o.effective_minor() * v.scale) +
         "\" transform=\"rotate(" + num(deg) + " " + num(cx) + " " + num(cy) + ")\" fill=\"" +
         fill + "\" stroke=\"#555555\" stroke-width=\"0.5\"/>\n";
}

std::string star(const View& v, Point2 p) {
  std::string pts;
  for (int i = 0; i < 10; ++i) {
    const double r = (i % 2 == 0 ? 9.0 : 4.0);
    const double ang = std::numbers::pi / 2.0 + i * std::numbers::pi / 5.0;
    if (i) pts += ' ';
    pts += num(v.x(p.x) + r * std::cos(ang)) + "," + num(v.y(p.y) - r * std::sin(ang));
  }
  return "  <polygon class=\"endpoint\" points=\"" + pts + "\" fill=\"#d62728\"/>\n";
}

}  // namespace

std::string render_svg(const Scenario& sc, std::span<const Point2> route,
                       const SmoothedCurve* curve) {
  const double extent = std::max(sc.bounds.width, sc.bounds.height);
  const View v{kCanvas / extent, sc.bounds.height};
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(v.x(sc.bounds.width)) +
         "\" height=\"" + num(sc.bounds.height * v.scale) + "\" viewBox=\"0 0 " +
         num(v.x(sc.bounds.width)) + " " + num(sc.bounds.height * v.scale) + "\">\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"" + num(v.x(sc.bounds.width)) + "\" height=\"" +
         num(sc.bounds.height * v.scale) + "\" fill=\"#ffffff\" stroke=\"#000000\"/>\n";
  for (std::size_t i = 0; i < sc.obstacles.size(); ++i) {
    out += ellipse(v, sc.obstacles[i], sc.initially_known[i] ? "#f5d442" : "#b0b0b0");
  }
  for (const auto& p : sc.popups) out += ellipse(v, p.obstacle, "#e03030");

  if (!route.empty()) {
    std::string pts;
    for (std::size_t i = 0; i < route.size(); ++i) {
      if (i) pts += ' ';
      pts += num(v.x(route[i].x)) + "," + num(v.y(route[i].y));
    }
    out += "  <polyline class=\"route\" points=\"" + pts +
           "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  }
  if (curve && !curve->samples.empty()) {
    std::string d;
    for (std::size_t i = 0; i < curve->samples.size(); ++i) {
      d += (i == 0 ? "M" : " L") + num(v.x(curve->samples[i].x)) + " " +
           num(v.y(curve->samples[i].y));
    }
    out += "  <path class=\"curve\" d=\"" + d +
           "\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.5\"/>\n";
  }
  out += star(v, sc.start);
  out += star(v, sc.end);
  out += "</svg>\n";
  return out;
}

void render_svg_file(const std::string& path, const Scenario& scenario,
                     std::span<const Point2> route, const SmoothedCurve* curve) {
  write_text_file(path, render_svg(scenario, route, curve));
}

}  // namespace tangentplan
