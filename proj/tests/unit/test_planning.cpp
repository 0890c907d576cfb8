#include <gtest/gtest.h>

#include <random>

#include "deliver/error.hpp"
#include "deliver/planning.hpp"
#include "oracles.hpp"

using namespace deliver;

namespace {

const std::vector<Site> kHomeRobots{{RobotId{0}, {5.5, 15.5}}, {RobotId{1}, {14.5, 15.5}}, {RobotId{2}, {10.5, 3.5}}};

TaskSpec kitchen_to_bedroom() { return TaskSpec{{3.5, 16.5}, {16.5, 16.5}, "glass of water", "", "kitchen", "bedroom"}; }

bool path_is_valid(const GridPath& p, const OccupancyGrid& grid) {
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    if (!grid.in_bounds(p.cells[i]) || grid.blocked(p.cells[i])) return false;
    if (i > 0 && manhattan(p.cells[i - 1], p.cells[i]) != 1) return false;
  }
  return true;
}

}  // namespace

TEST(AStar, StraightLine) {
  const OccupancyGrid grid(unit_grid_workspace(10, 10));
  const GridPath p = astar(grid, {1, 1}, {7, 1});
  EXPECT_EQ(p.length(), 6);
  EXPECT_TRUE(path_is_valid(p, grid));
}

TEST(AStar, StartEqualsGoal) {
  const OccupancyGrid grid(unit_grid_workspace(5, 5));
  const GridPath p = astar(grid, {2, 2}, {2, 2});
  EXPECT_EQ(p.length(), 0);
  ASSERT_EQ(p.cells.size(), 1u);
}

TEST(AStar, DetoursAroundWall) {
  OccupancyGrid grid(unit_grid_workspace(7, 7));
  for (int r = 0; r < 6; ++r) grid.set_blocked({3, r});
  const GridPath p = astar(grid, {0, 0}, {6, 0});
  EXPECT_EQ(p.length(), 6 + 2 * 6);
  EXPECT_TRUE(path_is_valid(p, grid));
}

TEST(AStar, ErrorCodes) {
  OccupancyGrid grid(unit_grid_workspace(5, 5));
  grid.set_blocked({4, 4});
  auto code = [&](GridCell s, GridCell g) {
    try {
      (void)astar(grid, s, g);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidConfig;
  };
  EXPECT_EQ(code({0, 0}, {5, 0}), Errc::CellOutOfBounds);
  EXPECT_EQ(code({0, 0}, {4, 4}), Errc::BlockedEndpoint);
  grid.set_blocked({4, 4}, false);
  grid.set_blocked({3, 4});
  grid.set_blocked({4, 3});
  EXPECT_EQ(code({0, 0}, {4, 4}), Errc::NoPath);
  EXPECT_FALSE(find_path(grid, {0, 0}, {4, 4}).has_value());
}

TEST(AStar, MatchesBfsOnRandomGrids) {
  std::mt19937_64 rng(2024);
  std::bernoulli_distribution wall(0.25);
  std::uniform_int_distribution<int> coord(0, 14);
  for (int k = 0; k < 50; ++k) {
    std::vector<std::vector<bool>> blocked(15, std::vector<bool>(15));
    OccupancyGrid grid(unit_grid_workspace(15, 15));
    for (int r = 0; r < 15; ++r) {
      for (int c = 0; c < 15; ++c) {
        blocked[r][c] = wall(rng);
        grid.set_blocked({c, r}, blocked[r][c]);
      }
    }
    const GridCell s{coord(rng), coord(rng)};
    const GridCell g{coord(rng), coord(rng)};
    const auto expected = oracle::bfs_length(blocked, s, g);
    const auto got = find_path(grid, s, g);
    ASSERT_EQ(got.has_value(), expected.has_value());
    if (got) {
      EXPECT_EQ(got->length(), *expected);
      EXPECT_TRUE(path_is_valid(*got, grid));
    }
  }
}

TEST(AStar, Deterministic) {
  const OccupancyGrid grid(unit_grid_workspace(20, 20));
  const GridPath a = astar(grid, {0, 0}, {13, 9});
  const GridPath b = astar(grid, {0, 0}, {13, 9});
  EXPECT_EQ(a.cells, b.cells);
}

TEST(RelayPlan, KitchenToBedroomHasOneTransfer) {
  const OccupancyGrid grid(unit_grid_workspace(20, 20));
  const auto diagram = compute_voronoi(kHomeRobots, grid.workspace());
  const RelayPlan plan = build_relay_plan(kitchen_to_bedroom(), kHomeRobots, diagram, grid);
  EXPECT_EQ(plan.active, (std::vector<RobotId>{RobotId{0}, RobotId{1}}));
  ASSERT_EQ(plan.transfers.size(), 1u);
  EXPECT_NEAR(plan.transfers[0].x, 10.0, 1e-9);
  EXPECT_NEAR(plan.transfers[0].y, 15.5, 1e-9);
  EXPECT_TRUE(plan.transfer_on_edge[0]);
  ASSERT_EQ(plan.segments.size(), 2u);
  EXPECT_EQ(plan.segments[0].waypoints,
            (std::vector<Point>{{5.5, 15.5}, {3.5, 16.5}, plan.transfers[0]}));
  EXPECT_EQ(plan.segments[1].waypoints,
            (std::vector<Point>{{14.5, 15.5}, plan.transfers[0], {16.5, 16.5}}));
  EXPECT_FALSE(plan.baseline);
}

TEST(RelayPlan, SingleRobotDoesEverything) {
  const OccupancyGrid grid(unit_grid_workspace(20, 20));
  const std::vector<Site> one{{RobotId{4}, {9.5, 9.5}}};
  const auto diagram = compute_voronoi(one, grid.workspace());
  const RelayPlan plan = build_relay_plan(kitchen_to_bedroom(), one, diagram, grid);
  EXPECT_EQ(plan.active, (std::vector<RobotId>{RobotId{4}}));
  EXPECT_TRUE(plan.transfers.empty());
  EXPECT_EQ(plan.segments[0].waypoints, (std::vector<Point>{{9.5, 9.5}, {3.5, 16.5}, {16.5, 16.5}}));
}

TEST(RelayPlan, ActiveAgentsOwnThePathInOrder) {
  std::mt19937_64 rng(8);
  const OccupancyGrid grid(unit_grid_workspace(20, 20));
  for (int k = 0; k < 40; ++k) {
    const auto robots = oracle::random_sites(rng, 6, 0.0, 20.0);
    const auto diagram = compute_voronoi(robots, grid.workspace());
    const TaskSpec task{{0.5, 0.5}, {19.5, 19.5}, "box", "", "", ""};
    const RelayPlan plan = build_relay_plan(task, robots, diagram, grid);

    std::vector<RobotId> expected;
    for (GridCell c : plan.path.cells) {
      const RobotId owner = oracle::nearest_site(robots, center_of(c, grid));
      if (std::find(expected.begin(), expected.end(), owner) == expected.end()) expected.push_back(owner);
    }
    EXPECT_EQ(plan.active, expected);
    EXPECT_EQ(plan.transfers.size() + 1, plan.active.size());
    EXPECT_EQ(plan.active.front(), oracle::nearest_site(robots, task.pickup));
    for (std::size_t j = 0; j < plan.transfers.size(); ++j) {
      if (!plan.transfer_on_edge[j]) continue;
      const auto edge = shared_edge(diagram, plan.active[j], plan.active[j + 1]);
      ASSERT_TRUE(edge.has_value());
      EXPECT_NEAR(distance(project_clamp(plan.transfers[j], edge->p1, edge->p2), plan.transfers[j]), 0.0, 1e-9);
    }
  }
}

TEST(RelayPlan, BaselineUsesPickupOwner) {
  const OccupancyGrid grid(unit_grid_workspace(20, 20));
  const auto diagram = compute_voronoi(kHomeRobots, grid.workspace());
  const RelayPlan plan = single_agent_baseline(kitchen_to_bedroom(), kHomeRobots, diagram, grid);
  EXPECT_TRUE(plan.baseline);
  EXPECT_EQ(plan.active, (std::vector<RobotId>{RobotId{0}}));
  EXPECT_EQ(endpoint_agents(kitchen_to_bedroom(), diagram).second, RobotId{1});
  // 2 + 1 to the pickup, then 13 along the row.
  EXPECT_EQ(planned_moves(plan, grid), 3 + 13);
}

TEST(RelayPlan, BlockedDropIsReported) {
  OccupancyGrid grid(unit_grid_workspace(20, 20));
  grid.set_blocked({16, 16});
  const auto diagram = compute_voronoi(kHomeRobots, grid.workspace());
  try {
    (void)build_relay_plan(kitchen_to_bedroom(), kHomeRobots, diagram, grid);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BlockedEndpoint);
  }
}
