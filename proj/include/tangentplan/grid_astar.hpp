#pragma once

#include <optional>

#include "tangentplan/scenario.hpp"

namespace tangentplan {

/// Reference shortest-path length on an occupancy grid: 8-connected A* with
/// the octile heuristic over lattice nodes (multiples of `cell`) outside every
/// inflated obstacle. Diagonal moves may not cut a blocked corner. S and E
/// join the grid at their nearest node, which always counts as free, and the
/// two joining legs are part of the length. nullopt when E's node is
/// unreachable.
std::optional<double> grid_astar_oracle(const Scenario& scenario, double cell);

}  // namespace tangentplan
