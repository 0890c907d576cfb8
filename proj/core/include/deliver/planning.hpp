#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "deliver/geometry.hpp"
#include "deliver/nlu.hpp"
#include "deliver/world.hpp"

namespace deliver {

struct GridPath {
  std::vector<GridCell> cells;

  /// Number of moves (cells - 1).
  [[nodiscard]] int length() const noexcept {
    return cells.empty() ? 0 : static_cast<int>(cells.size()) - 1;
  }
};

/// One active robot's route: start position followed by its targets.
struct Segment {
  RobotId robot{};
  std::vector<Point> waypoints;
};

struct RelayPlan {
  TaskSpec task;
  std::vector<Site> robots;         // full team, including bystanders
  std::vector<RobotId> active;      // relay chain in handoff order
  std::vector<Point> transfers;     // transfers[j] between active[j] and active[j + 1]
  std::vector<bool> transfer_on_edge;  // false when the path-crossing fallback was used
  std::vector<Segment> segments;    // one per active robot, same order
  GridPath path;                    // global pickup -> drop path
  bool baseline = false;
};

/// Shortest 4-connected path with unit moves and the Manhattan heuristic.
/// Ties pop the lower f, then lower h, then lower row-major index.
/// Throws CellOutOfBounds, BlockedEndpoint or NoPath.
GridPath astar(const OccupancyGrid& grid, GridCell start, GridCell goal);

/// Non-throwing A*: nullopt when the goal is unreachable or either endpoint
/// is blocked or out of bounds.
std::optional<GridPath> find_path(const OccupancyGrid& grid, GridCell start, GridCell goal);

/// Owners of the pickup and drop points.
std::pair<RobotId, RobotId> endpoint_agents(const TaskSpec& task, const VoronoiDiagram& diagram);

/// Owners of the path's cell centers in order of first appearance.
std::vector<RobotId> select_active_agents(const GridPath& path, const VoronoiDiagram& diagram,
                                          const OccupancyGrid& grid);

RelayPlan build_relay_plan(const TaskSpec& task, std::span<const Site> robots,
                           const VoronoiDiagram& diagram, const OccupancyGrid& grid);

/// Pickup-region owner performs the whole task.
RelayPlan single_agent_baseline(const TaskSpec& task, std::span<const Site> robots,
                                const VoronoiDiagram& diagram, const OccupancyGrid& grid);

/// Sum over segments of A* move counts between consecutive (snapped) waypoints.
int planned_moves(const RelayPlan& plan, const OccupancyGrid& grid);

}  // namespace deliver
