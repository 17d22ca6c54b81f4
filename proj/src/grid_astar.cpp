#include "tangentplan/grid_astar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "tangentplan/error.hpp"

namespace tangentplan {

std::optional<double> grid_astar_oracle(const Scenario& scenario, double cell) {
  if (!(cell > 0.0)) throw Error(ErrorCode::InvalidArgument, "cell size must be positive");
  const int nx = static_cast<int>(std::floor(scenario.bounds.width / cell)) + 1;
  const int ny = static_cast<int>(std::floor(scenario.bounds.height / cell)) + 1;
  const auto index = [nx](int ix, int iy) { return static_cast<std::size_t>(iy) * nx + ix; };

  // Grid nodes sit on the lattice (ix * cell, iy * cell); S and E join the
  // grid at their nearest node.
  auto node_of = [&](Point2 p) {
    return std::pair{std::clamp(static_cast<int>(std::lround(p.x / cell)), 0, nx - 1),
                     std::clamp(static_cast<int>(std::lround(p.y / cell)), 0, ny - 1)};
  };
  auto position = [cell](int ix, int iy) { return Point2{ix * cell, iy * cell}; };
  const auto [sx, sy] = node_of(scenario.start);
  const auto [ex, ey] = node_of(scenario.end);
  const double joins = distance(scenario.start, position(sx, sy)) +
                       distance(scenario.end, position(ex, ey));

  std::vector<char> blocked(static_cast<std::size_t>(nx) * ny, 0);
  for (const auto& o : scenario.obstacles) {
    // Only nodes inside the obstacle's bounding box can be blocked.
    const double r = o.effective_major();
    const int x0 = std::max(0, static_cast<int>(std::floor((o.center().x - r) / cell)));
    const int x1 = std::min(nx - 1, static_cast<int>(std::ceil((o.center().x + r) / cell)));
    const int y0 = std::max(0, static_cast<int>(std::floor((o.center().y - r) / cell)));
    const int y1 = std::min(ny - 1, static_cast<int>(std::ceil((o.center().y + r) / cell)));
    for (int iy = y0; iy <= y1; ++iy) {
      for (int ix = x0; ix <= x1; ++ix) {
        if (signed_margin(o, position(ix, iy)) < 0.0) blocked[index(ix, iy)] = 1;
      }
    }
  }
  blocked[index(sx, sy)] = 0;
  blocked[index(ex, ey)] = 0;

  const double diag = std::numbers::sqrt2 * cell;
  auto heuristic = [&](int ix, int iy) {
    const int dx = std::abs(ix - ex);
    const int dy = std::abs(iy - ey);
    return cell * std::abs(dx - dy) + diag * std::min(dx, dy);
  };

  using Item = std::pair<double, std::size_t>;  // (f, cell index)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  std::vector<double> g(blocked.size(), std::numeric_limits<double>::infinity());
  std::vector<char> closed(blocked.size(), 0);
  g[index(sx, sy)] = 0.0;
  open.push({heuristic(sx, sy), index(sx, sy)});
  const std::size_t goal = index(ex, ey);

  while (!open.empty()) {
    const auto [f, cur] = open.top();
    open.pop();
    if (closed[cur]) continue;
    closed[cur] = 1;
    if (cur == goal) return g[cur] + joins;
    const int cx = static_cast<int>(cur % nx);
    const int cy = static_cast<int>(cur / nx);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int x = cx + dx;
        const int y = cy + dy;
        if (x < 0 || y < 0 || x >= nx || y >= ny) continue;
        const std::size_t nb = index(x, y);
        if (blocked[nb] || closed[nb]) continue;
        if (dx != 0 && dy != 0 && (blocked[index(cx + dx, cy)] || blocked[index(cx, cy + dy)])) {
          continue;
        }
        const double cand = g[cur] + (dx != 0 && dy != 0 ? diag : cell);
        if (cand < g[nb]) {
          g[nb] = cand;
          open.push({cand + heuristic(x, y), nb});
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace tangentplan
