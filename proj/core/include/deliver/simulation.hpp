#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "deliver/coordination.hpp"
#include "deliver/geometry.hpp"
#include "deliver/nlu.hpp"
#include "deliver/planning.hpp"
#include "deliver/world.hpp"

namespace deliver {

struct SimConfig {
  int grid_cols = 20;
  int grid_rows = 20;
  std::vector<int> team_sizes{1, 3, 5, 7, 10};
  int trials_per_size = 100;
  int min_task_separation = 8;  // cells, Euclidean between cell centers
  std::uint64_t seed = 0;
  int message_delay = 0;
  std::optional<int> tick_budget;  // defaults to 10 * grid area

  /// Throws InvalidConfig.
  void validate() const;
  [[nodiscard]] int effective_tick_budget() const { return tick_budget.value_or(10 * grid_cols * grid_rows); }
  [[nodiscard]] Workspace workspace() const { return unit_grid_workspace(grid_cols, grid_rows); }

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Seed for one trial, derived from the batch seed by a counter-based
/// splitmix64 mix of (team_size, trial_index), so any trial can be rerun alone.
std::uint64_t trial_seed(std::uint64_t master, int team_size, int trial_index) noexcept;

struct TrialSetup {
  std::vector<Site> robots;  // ids 0..n-1 at distinct cell centers
  TaskSpec task;
};

/// Random start cells and a pickup/drop pair at least min_task_separation apart.
/// Throws PlacementExhausted.
TrialSetup generate_trial(int team_size, const SimConfig& config, std::mt19937_64& rng);

enum class PackageState { AtPickup, Carried, Delivered };

struct RobotSnapshot {
  RobotId id{};
  GridCell cell;
  FsmState state = FsmState::Idle;
  bool carrying = false;
  bool active = false;
};

struct TickSnapshot {
  int tick = 0;
  std::vector<RobotSnapshot> robots;
  PackageState package = PackageState::AtPickup;
  std::optional<RobotId> holder;
};

using TickObserver = std::function<void(const TickSnapshot&)>;

struct Execution {
  std::vector<HandoffMessage> messages;  // every message sent, in send order
  std::map<RobotId, int> moves;          // active robots only
  int total_moves = 0;
  int ticks = 0;
  bool completed = false;
};

struct ExecutionOptions {
  int task_id = 0;
  int message_delay = 0;
  int tick_budget = 4000;
  TickObserver observer;
};

/// Tick-synchronous execution of a plan: one 4-connected move per tick,
/// lower ids move first, a robot whose next cell is taken waits.
Execution execute_plan(const RelayPlan& plan, const OccupancyGrid& grid, const ExecutionOptions& options);

struct TrialRecord {
  int trial_id = 0;
  int team_size = 0;
  std::uint64_t seed = 0;
  TaskSpec task;
  int active_count = 0;
  std::map<RobotId, int> per_agent_moves;
  int total_moves = 0;
  int baseline_total_moves = 0;
  bool baseline_completed = false;
  int ticks = 0;
  bool completed = false;
  int transfers = 0;
  int handoffs = 0;  // HandoffReady messages sent
  std::string error;  // set when the trial could not be generated or planned

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct TrialOptions {
  int trial_id = 0;
  std::uint64_t seed = 0;
  TickObserver observer;  // relay execution only
};

struct TrialRun {
  TrialRecord record;
  RelayPlan plan;
  RelayPlan baseline_plan;
  std::vector<HandoffMessage> messages;
};

/// Plans and executes the relay, then the paired single-agent baseline on the
/// same placement. A blown tick budget yields completed = false, not an error.
TrialRun run_trial(std::span<const Site> robots, const TaskSpec& task, const SimConfig& config,
                   const TrialOptions& options = {});

/// Same, on an explicit grid (e.g. a semantic map's workspace); the config
/// contributes message delay and tick budget only.
TrialRun run_trial(std::span<const Site> robots, const TaskSpec& task, const OccupancyGrid& grid,
                   const SimConfig& config, const TrialOptions& options = {});

struct TeamSummary {
  int team_size = 0;
  int trials = 0;
  int completed = 0;
  double completion_rate = 0.0;
  double mean_total = 0.0;
  double std_total = 0.0;  // population standard deviation
  double mean_per_agent = 0.0;
  double mean_active = 0.0;
  double mean_baseline = 0.0;
  double reduction = 0.0;  // 1 - mean_per_agent / mean_baseline; 0 for one robot
};

struct BatchSummary {
  std::vector<TeamSummary> rows;  // ascending team size
  double reduction_vs_baseline = 0.0;  // row of the largest team
};

/// Statistics over trials whose relay and baseline both completed.
/// Throws NoCompletedTrials if a team size has none.
BatchSummary summarize(std::span<const TrialRecord> records);

struct BatchResult {
  BatchSummary summary;
  std::vector<TrialRecord> records;
};

BatchResult run_batch(const SimConfig& config);

}  // namespace deliver
