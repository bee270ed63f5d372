#pragma once

#include <optional>

#include "cheesebench/grid.hpp"

namespace cheesebench::testing {

// Fewest FORWARD/ROTATE moves from `start` to any GOAL cell, found by relaxing
// a distance table to a fixed point (Bellman-Ford style). Deliberately shares
// nothing with the oracle's BFS.
std::optional<int> shortest_path_length(const GridMap& grid, const Pose& start);

}  // namespace cheesebench::testing

#include <vector>

namespace cheesebench::testing {

// Actions that walk from `start` onto cell (x, y), for scripting trajectories.
// Plain BFS; empty if unreachable or already there.
std::vector<Action> route_to(const GridMap& grid, const Pose& start, int x, int y);

// Rotations that turn `from` to face `to` (at most two).
std::vector<Action> face(Heading from, Heading to);

}  // namespace cheesebench::testing
