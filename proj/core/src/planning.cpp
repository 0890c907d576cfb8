#include "deliver/planning.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "deliver/error.hpp"

namespace deliver {

namespace {

std::string describe(GridCell c) {
  return "[" + std::to_string(c.col) + ", " + std::to_string(c.row) + "]";
}

Point position_of(std::span<const Site> robots, RobotId id) {
  auto it = std::find_if(robots.begin(), robots.end(), [id](const Site& s) { return s.id == id; });
  if (it == robots.end()) {
    throw Error(Errc::UnknownRobotId, "robot " + std::to_string(index_of(id)) + " has no position");
  }
  return it->position;
}

std::vector<RobotId> path_owners(const GridPath& path, const VoronoiDiagram& diagram,
                                 const OccupancyGrid& grid) {
  std::vector<RobotId> owners;
  owners.reserve(path.cells.size());
  for (GridCell c : path.cells) owners.push_back(locate(center_of(c, grid), diagram));
  return owners;
}

}  // namespace

GridPath astar(const OccupancyGrid& grid, GridCell start, GridCell goal) {
  if (!grid.in_bounds(start)) throw Error(Errc::CellOutOfBounds, "start " + describe(start));
  if (!grid.in_bounds(goal)) throw Error(Errc::CellOutOfBounds, "goal " + describe(goal));
  if (grid.blocked(start)) throw Error(Errc::BlockedEndpoint, "start " + describe(start));
  if (grid.blocked(goal)) throw Error(Errc::BlockedEndpoint, "goal " + describe(goal));
  if (auto path = find_path(grid, start, goal)) return std::move(*path);
  throw Error(Errc::NoPath, describe(start) + " -> " + describe(goal));
}

std::optional<GridPath> find_path(const OccupancyGrid& grid, GridCell start, GridCell goal) {
  if (!grid.in_bounds(start) || !grid.in_bounds(goal) || grid.blocked(start) || grid.blocked(goal)) {
    return std::nullopt;
  }

  constexpr int kUnseen = std::numeric_limits<int>::max();
  const auto area = static_cast<std::size_t>(grid.area());
  std::vector<int> g(area, kUnseen);
  std::vector<int> parent(area, -1);
  std::vector<char> closed(area, 0);

  // (f, h, row-major index), smallest first.
  using Entry = std::tuple<int, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  const int start_idx = grid.index(start);
  const int goal_idx = grid.index(goal);
  g[static_cast<std::size_t>(start_idx)] = 0;
  open.emplace(manhattan(start, goal), manhattan(start, goal), start_idx);

  constexpr std::array<std::pair<int, int>, 4> kSteps{{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};
  while (!open.empty()) {
    const auto [f, h, idx] = open.top();
    open.pop();
    const auto uidx = static_cast<std::size_t>(idx);
    if (closed[uidx] != 0) continue;
    closed[uidx] = 1;
    if (idx == goal_idx) break;

    const GridCell cur = grid.cell_at(idx);
    for (const auto& [dc, dr] : kSteps) {
      const GridCell next{cur.col + dc, cur.row + dr};
      if (!grid.in_bounds(next) || grid.blocked(next)) continue;
      const auto nidx = static_cast<std::size_t>(grid.index(next));
      if (closed[nidx] != 0) continue;
      const int cost = g[uidx] + 1;
      if (cost < g[nidx]) {
        g[nidx] = cost;
        parent[nidx] = idx;
        const int nh = manhattan(next, goal);
        open.emplace(cost + nh, nh, static_cast<int>(nidx));
      }
    }
  }

  if (g[static_cast<std::size_t>(goal_idx)] == kUnseen) return std::nullopt;
  GridPath path;
  for (int idx = goal_idx; idx != -1; idx = parent[static_cast<std::size_t>(idx)]) {
    path.cells.push_back(grid.cell_at(idx));
  }
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

std::pair<RobotId, RobotId> endpoint_agents(const TaskSpec& task, const VoronoiDiagram& diagram) {
  return {locate(task.pickup, diagram), locate(task.drop, diagram)};
}

std::vector<RobotId> select_active_agents(const GridPath& path, const VoronoiDiagram& diagram,
                                          const OccupancyGrid& grid) {
  std::vector<RobotId> active;
  for (RobotId owner : path_owners(path, diagram, grid)) {
    // A path that wanders back into an earlier region keeps that robot's
    // single slot in the chain.
    if (std::find(active.begin(), active.end(), owner) == active.end()) active.push_back(owner);
  }
  return active;
}

RelayPlan build_relay_plan(const TaskSpec& task, std::span<const Site> robots,
                           const VoronoiDiagram& diagram, const OccupancyGrid& grid) {
  if (robots.empty()) throw Error(Errc::EmptySites, "relay planning needs at least one robot");
  validate_task(task, grid.workspace());

  RelayPlan plan;
  plan.task = task;
  plan.robots.assign(robots.begin(), robots.end());
  plan.path = astar(grid, cell_of(task.pickup, grid), cell_of(task.drop, grid));

  const std::vector<RobotId> owners = path_owners(plan.path, diagram, grid);
  plan.active = select_active_agents(plan.path, diagram, grid);

  for (std::size_t j = 0; j + 1 < plan.active.size(); ++j) {
    const RobotId from = plan.active[j];
    const RobotId to = plan.active[j + 1];
    if (auto edge = shared_edge(diagram, from, to)) {
      plan.transfers.push_back(
          relay_point(position_of(robots, from), position_of(robots, to), *edge).point);
      plan.transfer_on_edge.push_back(true);
      continue;
    }
    // No common boundary: hand off where the path first enters the receiver's region.
    const auto entry = static_cast<std::size_t>(std::find(owners.begin(), owners.end(), to) - owners.begin());
    plan.transfers.push_back(midpoint(center_of(plan.path.cells[entry - 1], grid),
                                      center_of(plan.path.cells[entry], grid)));
    plan.transfer_on_edge.push_back(false);
  }

  const std::size_t k = plan.transfers.size();
  for (std::size_t j = 0; j < plan.active.size(); ++j) {
    const RobotId id = plan.active[j];
    Segment seg{id, {position_of(robots, id)}};
    seg.waypoints.push_back(j == 0 ? task.pickup : plan.transfers[j - 1]);
    seg.waypoints.push_back(j == k ? task.drop : plan.transfers[j]);
    plan.segments.push_back(std::move(seg));
  }
  return plan;
}

RelayPlan single_agent_baseline(const TaskSpec& task, std::span<const Site> robots,
                                const VoronoiDiagram& diagram, const OccupancyGrid& grid) {
  if (robots.empty()) throw Error(Errc::EmptySites, "baseline needs at least one robot");
  validate_task(task, grid.workspace());

  RelayPlan plan;
  plan.task = task;
  plan.robots.assign(robots.begin(), robots.end());
  plan.path = astar(grid, cell_of(task.pickup, grid), cell_of(task.drop, grid));
  const RobotId owner = endpoint_agents(task, diagram).first;
  plan.active = {owner};
  plan.segments.push_back({owner, {position_of(robots, owner), task.pickup, task.drop}});
  plan.baseline = true;
  return plan;
}

int planned_moves(const RelayPlan& plan, const OccupancyGrid& grid) {
  int total = 0;
  for (const Segment& seg : plan.segments) {
    for (std::size_t w = 0; w + 1 < seg.waypoints.size(); ++w) {
      total += astar(grid, cell_of(seg.waypoints[w], grid), cell_of(seg.waypoints[w + 1], grid)).length();
    }
  }
  return total;
}

}  // namespace deliver
