#include "deliver/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "deliver/error.hpp"

namespace deliver {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr double kSlack = 1e-9;

struct Agent {
  RobotId id{};
  GridCell cell;
  RobotFsm fsm;
  bool active = false;
  bool parked = true;  // not heading anywhere this tick
  int moves = 0;
};

class Executor {
 public:
  Executor(const RelayPlan& plan, const OccupancyGrid& grid, const ExecutionOptions& options)
      : plan_(plan), grid_(grid), options_(options), bus_(options.message_delay) {
    std::vector<Site> robots = plan.robots;
    std::sort(robots.begin(), robots.end(), [](const Site& a, const Site& b) { return a.id < b.id; });
    for (const Site& s : robots) {
      const GridCell cell = cell_of(s.position, grid_);
      if (grid_.blocked(cell)) throw Error(Errc::InvalidPlan, "robot starts on a blocked cell");
      for (const Agent& other : agents_) {
        if (other.cell == cell || other.id == s.id) {
          throw Error(Errc::InvalidPlan, "robots " + std::to_string(index_of(other.id)) + " and " +
                                             std::to_string(index_of(s.id)) + " share a start cell");
        }
      }
      Agent agent;
      agent.id = s.id;
      agent.cell = cell;
      agent.fsm.robot_id = s.id;
      agents_.push_back(std::move(agent));
    }
    if (plan.active.size() != plan.transfers.size() + 1) {
      throw Error(Errc::InvalidPlan, "transfers must number one fewer than active robots");
    }
  }

  Execution run() {
    assign_segments();
    settle(0);
    observe(0);
    int tick = 0;
    while (!completed_ && tick < options_.tick_budget) {
      ++tick;
      move_all();
      settle(tick);
      observe(tick);
    }
    exec_.completed = completed_;
    exec_.ticks = completed_ ? completion_tick_ : tick;
    for (const Agent& a : agents_) {
      if (a.active) exec_.moves[a.id] = a.moves;
      exec_.total_moves += a.moves;
    }
    return std::move(exec_);
  }

 private:
  Agent& agent(RobotId id) {
    for (Agent& a : agents_) {
      if (a.id == id) return a;
    }
    throw Error(Errc::InvalidPlan, "robot " + std::to_string(index_of(id)) + " is not in the team");
  }

  void assign_segments() {
    const std::size_t last = plan_.active.size() - 1;
    for (std::size_t j = 0; j <= last; ++j) {
      event::AssignSegment assign;
      assign.task_id = options_.task_id;
      assign.item = plan_.task.item;
      assign.role = j == 0 ? Role::Initiator : (j == last ? Role::Final : Role::Intermediate);
      if (j == 0) {
        assign.waypoints.push_back({plan_.task.pickup, WaypointKind::Pickup, {}});
      } else {
        assign.waypoints.push_back(
            {plan_.transfers[j - 1], WaypointKind::IncomingTransfer, plan_.active[j - 1]});
      }
      if (j == last) {
        assign.waypoints.push_back({plan_.task.drop, WaypointKind::Drop, {}});
      } else {
        assign.waypoints.push_back({plan_.transfers[j], WaypointKind::OutgoingTransfer, plan_.active[j + 1]});
      }
      Agent& a = agent(plan_.active[j]);
      a.active = true;
      apply(a, assign);
    }
  }

  bool parked_at(GridCell c, RobotId skip_a, RobotId skip_b) const {
    return std::any_of(agents_.begin(), agents_.end(), [&](const Agent& a) {
      return a.parked && a.cell == c && a.id != skip_a && a.id != skip_b;
    });
  }

  bool usable(GridCell c) const { return grid_.in_bounds(c) && !grid_.blocked(c); }

  // Cells whose centers lie within `radius` of p, nearest first, row-major on ties.
  std::vector<GridCell> cells_near(Point p, double radius) const {
    const GridCell home = cell_of(p, grid_);
    const int reach = static_cast<int>(std::ceil(radius / std::min(grid_.cell_width(), grid_.cell_height()))) + 1;
    std::vector<std::pair<double, GridCell>> found;
    for (int dr = -reach; dr <= reach; ++dr) {
      for (int dc = -reach; dc <= reach; ++dc) {
        const GridCell c{home.col + dc, home.row + dr};
        if (!usable(c)) continue;
        const double d = distance(center_of(c, grid_), p);
        if (d <= radius + kSlack) found.emplace_back(d, c);
      }
    }
    std::sort(found.begin(), found.end(), [this](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return grid_.index(a.second) < grid_.index(b.second);
    });
    std::vector<GridCell> out;
    out.reserve(found.size());
    for (const auto& [d, c] : found) out.push_back(c);
    return out;
  }

  // Pickup and drop: the target cell, or the nearest free neighbour when a
  // parked robot sits on it.
  GridCell reach_goal(Point p, RobotId self) const {
    const GridCell target = cell_of(p, grid_);
    if (!parked_at(target, self, self) && usable(target)) return target;
    for (GridCell c : cells_near(p, grid_.cell_diagonal() + 0.5 * grid_.cell_diagonal())) {
      if (chebyshev(c, target) <= 1 && !parked_at(c, self, self)) return c;
    }
    return target;
  }

  // Where the sender stops for a handoff at z: within one cell diagonal of z.
  // A sender already that close stays put; otherwise it never aims at the
  // receiver's cell, which would leave the two waiting on each other.
  GridCell sender_goal(Point z, const Agent& sender, const Agent& receiver) const {
    const double diag = grid_.cell_diagonal();
    if (distance(center_of(sender.cell, grid_), z) <= diag + kSlack) return sender.cell;
    const auto near = cells_near(z, diag);
    for (GridCell c : near) {
      if (c != receiver.cell && !parked_at(c, sender.id, receiver.id)) return c;
    }
    return near.empty() ? cell_of(z, grid_) : near.front();
  }

  GridCell receiver_goal(const Agent& self, const Waypoint& wp) {
    const Agent& sender = agent(wp.peer);
    const double diag = grid_.cell_diagonal();
    const bool sender_waiting = sender.fsm.state == FsmState::Relay;
    const GridCell anchor = sender_waiting ? sender.cell : sender_goal(wp.at, sender, self);

    auto fits = [&](GridCell c) {
      return c != anchor && chebyshev(c, anchor) <= 1 && distance(center_of(c, grid_), wp.at) <= diag + kSlack;
    };
    if (fits(self.cell)) return self.cell;
    for (GridCell c : cells_near(wp.at, diag)) {
      if (fits(c) && !parked_at(c, self.id, self.id)) return c;
    }
    // Nothing near z is free: settle for any free neighbour of the sender.
    for (GridCell c : cells_near(center_of(anchor, grid_), diag)) {
      if (c != anchor && !parked_at(c, self.id, self.id)) return c;
    }
    return self.cell;
  }

  std::optional<GridCell> goal_of(const Agent& a) {
    if (!a.active || a.fsm.state != FsmState::Navigate || a.fsm.waypoints.empty() || a.fsm.awaiting_at) {
      return std::nullopt;
    }
    const Waypoint& wp = a.fsm.waypoints.front();
    switch (wp.kind) {
      case WaypointKind::Pickup:
      case WaypointKind::Drop:
        return reach_goal(wp.at, a.id);
      case WaypointKind::OutgoingTransfer:
        return sender_goal(wp.at, a, agent(wp.peer));
      case WaypointKind::IncomingTransfer:
        return receiver_goal(a, wp);
    }
    return std::nullopt;
  }

  bool occupied(GridCell c, RobotId self) const {
    return std::any_of(agents_.begin(), agents_.end(),
                       [&](const Agent& a) { return a.id != self && a.cell == c; });
  }

  std::optional<GridPath> plan_leg(const Agent& a, GridCell goal, bool avoid_moving) const {
    OccupancyGrid local = grid_;
    for (const Agent& other : agents_) {
      if (other.id != a.id && (avoid_moving || other.parked)) local.set_blocked(other.cell);
    }
    return find_path(local, a.cell, goal);
  }

  void move_all() {
    std::vector<std::optional<GridCell>> goals;
    goals.reserve(agents_.size());
    for (Agent& a : agents_) {
      goals.push_back(goal_of(a));
      a.parked = !goals.back() || *goals.back() == a.cell;
    }
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      Agent& a = agents_[i];
      if (a.parked) continue;
      const GridCell goal = *goals[i];
      auto leg = plan_leg(a, goal, true);
      if (!leg) leg = plan_leg(a, goal, false);
      if (!leg) leg = find_path(grid_, a.cell, goal);
      if (!leg || leg->cells.size() < 2) continue;
      const GridCell next = leg->cells[1];
      if (occupied(next, a.id)) {  // wait this tick
        make_way(next, a, *leg);
        continue;
      }
      a.cell = next;
      ++a.moves;
    }
  }

  // An idle robot standing on `cell` steps to a free neighbour, off `leg`
  // when possible, so `mover` is not walled in by robots with nothing to do.
  void make_way(GridCell cell, const Agent& mover, const GridPath& leg) {
    auto blocker = std::find_if(agents_.begin(), agents_.end(), [&](const Agent& b) { return b.cell == cell; });
    if (blocker == agents_.end() || !blocker->parked || blocker->fsm.state != FsmState::Idle) return;
    constexpr GridCell kSteps[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::optional<GridCell> fallback;
    for (GridCell step : kSteps) {
      const GridCell c{cell.col + step.col, cell.row + step.row};
      if (!usable(c) || c == mover.cell || occupied(c, blocker->id)) continue;
      if (std::find(leg.cells.begin(), leg.cells.end(), c) == leg.cells.end()) {
        fallback = c;
        break;
      }
      if (!fallback) fallback = c;
    }
    if (!fallback) return;
    blocker->cell = *fallback;
    ++blocker->moves;
  }

  void apply(Agent& a, const FsmEvent& event) {
    const bool had = a.fsm.carrying.has_value();
    FsmStep step = fsm_step(a.fsm, event);
    a.fsm = std::move(step.fsm);
    if (!had && a.fsm.carrying) {
      package_ = PackageState::Carried;
      holder_ = a.id;
    }
    if (std::holds_alternative<event::DropDone>(event)) {
      package_ = PackageState::Delivered;
      holder_.reset();
    }
    for (const HandoffMessage& m : step.messages) {
      bus_.send(m);
      exec_.messages.push_back(m);
    }
  }

  bool process_arrivals(Agent& a, int tick) {
    bool progressed = false;
    while (a.active && a.fsm.state == FsmState::Navigate && !a.fsm.awaiting_at && !a.fsm.waypoints.empty()) {
      const Waypoint& wp = a.fsm.waypoints.front();
      if (wp.kind == WaypointKind::IncomingTransfer && agent(wp.peer).fsm.state != FsmState::Relay) break;
      const auto goal = goal_of(a);
      if (!goal || *goal != a.cell) break;

      const Point here = center_of(a.cell, grid_);
      apply(a, event::ArrivedWaypoint{tick, here});
      progressed = true;
      if (a.fsm.state == FsmState::Pickup) apply(a, event::PickupDone{tick});
      if (a.fsm.state == FsmState::Deliver) apply(a, event::DropDone{tick, here});
    }
    return progressed;
  }

  bool process_inbox(Agent& a, int tick) {
    const auto inbox = bus_.poll(a.id, tick);
    for (const HandoffMessage& m : inbox) apply(a, event::MessageReceived{tick, m});
    return !inbox.empty();
  }

  // Runs arrivals and message delivery to a fixed point for this tick.
  void settle(int tick) {
    bool progressed = true;
    while (progressed) {
      progressed = false;
      for (Agent& a : agents_) {
        progressed |= process_arrivals(a, tick);
        progressed |= process_inbox(a, tick);
      }
      for (const HandoffMessage& m : bus_.poll(kCoordinator, tick)) {
        if (m.kind == MessageKind::TaskComplete && !completed_) {
          completed_ = true;
          completion_tick_ = tick;
        }
      }
    }
  }

  void observe(int tick) const {
    if (!options_.observer) return;
    TickSnapshot snap;
    snap.tick = tick;
    snap.package = package_;
    snap.holder = holder_;
    for (const Agent& a : agents_) {
      snap.robots.push_back({a.id, a.cell, a.fsm.state, a.fsm.carrying.has_value(), a.active});
    }
    options_.observer(snap);
  }

  const RelayPlan& plan_;
  const OccupancyGrid& grid_;
  const ExecutionOptions& options_;
  MessageBus bus_;
  std::vector<Agent> agents_;
  Execution exec_;
  PackageState package_ = PackageState::AtPickup;
  std::optional<RobotId> holder_;
  bool completed_ = false;
  int completion_tick_ = 0;
};

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

void SimConfig::validate() const {
  if (grid_cols < 1 || grid_rows < 1) throw Error(Errc::InvalidConfig, "grid dimensions must be positive");
  if (team_sizes.empty()) throw Error(Errc::InvalidConfig, "team_sizes is empty");
  for (int n : team_sizes) {
    if (n < 1 || n > grid_cols * grid_rows) {
      throw Error(Errc::InvalidConfig, "team size " + std::to_string(n) + " does not fit the grid");
    }
  }
  if (trials_per_size < 1) throw Error(Errc::InvalidConfig, "trials_per_size must be at least 1");
  const double diameter = std::hypot(grid_cols - 1, grid_rows - 1);
  if (min_task_separation < 0 || min_task_separation >= diameter) {
    throw Error(Errc::InvalidConfig, "min_task_separation must be below the grid diameter");
  }
  if (message_delay < 0) throw Error(Errc::InvalidConfig, "message_delay must be non-negative");
  if (tick_budget && *tick_budget < 1) throw Error(Errc::InvalidConfig, "tick_budget must be positive");
}

std::uint64_t trial_seed(std::uint64_t master, int team_size, int trial_index) noexcept {
  const std::uint64_t counter =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(team_size)) << 32) |
      static_cast<std::uint32_t>(trial_index);
  return splitmix64(master ^ splitmix64(counter));
}

TrialSetup generate_trial(int team_size, const SimConfig& config, std::mt19937_64& rng) {
  if (team_size < 1) throw Error(Errc::InvalidConfig, "team size must be at least 1");
  const OccupancyGrid grid(config.workspace());
  const int area = grid.area();
  if (team_size > area) throw Error(Errc::PlacementExhausted, "more robots than cells");

  // Partial Fisher-Yates over row-major cell indices.
  std::vector<int> cells(static_cast<std::size_t>(area));
  std::iota(cells.begin(), cells.end(), 0);
  TrialSetup setup;
  for (int i = 0; i < team_size; ++i) {
    std::uniform_int_distribution<int> pick(i, area - 1);
    std::swap(cells[static_cast<std::size_t>(i)], cells[static_cast<std::size_t>(pick(rng))]);
    setup.robots.push_back({RobotId{static_cast<std::uint32_t>(i)},
                            center_of(grid.cell_at(cells[static_cast<std::size_t>(i)]), grid)});
  }

  constexpr int kMaxAttempts = 10000;
  std::uniform_int_distribution<int> any_cell(0, area - 1);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const Point pickup = center_of(grid.cell_at(any_cell(rng)), grid);
    const Point drop = center_of(grid.cell_at(any_cell(rng)), grid);
    if (distance(pickup, drop) + kSlack >= config.min_task_separation) {
      setup.task = TaskSpec{pickup, drop, "package", "", "", ""};
      return setup;
    }
  }
  throw Error(Errc::PlacementExhausted, "no pickup/drop pair met the separation");
}

Execution execute_plan(const RelayPlan& plan, const OccupancyGrid& grid, const ExecutionOptions& options) {
  return Executor(plan, grid, options).run();
}

TrialRun run_trial(std::span<const Site> robots, const TaskSpec& task, const SimConfig& config,
                   const TrialOptions& options) {
  config.validate();
  return run_trial(robots, task, OccupancyGrid(config.workspace()), config, options);
}

TrialRun run_trial(std::span<const Site> robots, const TaskSpec& task, const OccupancyGrid& grid,
                   const SimConfig& config, const TrialOptions& options) {
  if (config.message_delay < 0) throw Error(Errc::InvalidConfig, "message_delay must be non-negative");
  const VoronoiDiagram diagram = compute_voronoi(robots, grid.workspace());

  TrialRun run;
  run.plan = build_relay_plan(task, robots, diagram, grid);
  run.baseline_plan = single_agent_baseline(task, robots, diagram, grid);

  ExecutionOptions exec_options{options.trial_id, config.message_delay, config.effective_tick_budget(),
                                options.observer};
  Execution relay = execute_plan(run.plan, grid, exec_options);
  exec_options.observer = nullptr;
  const Execution baseline = execute_plan(run.baseline_plan, grid, exec_options);

  TrialRecord& rec = run.record;
  rec.trial_id = options.trial_id;
  rec.team_size = static_cast<int>(robots.size());
  rec.seed = options.seed;
  rec.task = task;
  rec.active_count = static_cast<int>(run.plan.active.size());
  rec.per_agent_moves = relay.moves;
  rec.total_moves = relay.total_moves;
  rec.baseline_total_moves = baseline.total_moves;
  rec.baseline_completed = baseline.completed;
  rec.ticks = relay.ticks;
  rec.completed = relay.completed;
  rec.transfers = static_cast<int>(run.plan.transfers.size());
  rec.handoffs = static_cast<int>(std::count_if(relay.messages.begin(), relay.messages.end(), [](const auto& m) {
    return m.kind == MessageKind::HandoffReady;
  }));
  run.messages = std::move(relay.messages);
  return run;
}

BatchSummary summarize(std::span<const TrialRecord> records) {
  std::map<int, std::vector<const TrialRecord*>> by_size;
  for (const TrialRecord& r : records) by_size[r.team_size].push_back(&r);
  if (by_size.empty()) throw Error(Errc::NoCompletedTrials, "no trial records");

  BatchSummary summary;
  for (const auto& [size, group] : by_size) {
    std::vector<double> totals;
    std::vector<double> per_agent;
    std::vector<double> active;
    std::vector<double> baseline;
    for (const TrialRecord* r : group) {
      if (!r->completed || !r->baseline_completed) continue;
      totals.push_back(r->total_moves);
      per_agent.push_back(static_cast<double>(r->total_moves) / r->active_count);
      active.push_back(r->active_count);
      baseline.push_back(r->baseline_total_moves);
    }
    if (totals.empty()) {
      throw Error(Errc::NoCompletedTrials, "team size " + std::to_string(size) + " has no completed trials");
    }

    TeamSummary row;
    row.team_size = size;
    row.trials = static_cast<int>(group.size());
    row.completed = static_cast<int>(totals.size());
    row.completion_rate = static_cast<double>(row.completed) / row.trials;
    row.mean_total = mean_of(totals);
    double sq = 0.0;
    for (double t : totals) sq += (t - row.mean_total) * (t - row.mean_total);
    row.std_total = std::sqrt(sq / static_cast<double>(totals.size()));
    row.mean_per_agent = mean_of(per_agent);
    row.mean_active = mean_of(active);
    row.mean_baseline = mean_of(baseline);
    row.reduction = (size == 1 || row.mean_baseline == 0.0) ? 0.0 : 1.0 - row.mean_per_agent / row.mean_baseline;
    summary.rows.push_back(row);
  }
  summary.reduction_vs_baseline = summary.rows.back().reduction;
  return summary;
}

BatchResult run_batch(const SimConfig& config) {
  config.validate();
  BatchResult result;
  int trial_id = 0;
  for (int size : config.team_sizes) {
    for (int t = 0; t < config.trials_per_size; ++t, ++trial_id) {
      const std::uint64_t seed = trial_seed(config.seed, size, t);
      std::mt19937_64 rng(seed);
      TrialRecord record;
      record.trial_id = trial_id;
      record.team_size = size;
      record.seed = seed;
      try {
        const TrialSetup setup = generate_trial(size, config, rng);
        record = run_trial(setup.robots, setup.task, config, {trial_id, seed, nullptr}).record;
      } catch (const Error& e) {
        record.error = e.what();
      }
      result.records.push_back(std::move(record));
    }
  }
  result.summary = summarize(result.records);
  return result;
}

}  // namespace deliver
