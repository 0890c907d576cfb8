#include "commands.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "deliver/planning.hpp"
#include "deliver/serialization.hpp"
#include "render.hpp"

namespace deliver::tools {

namespace {

spdlog::logger& log() {
  static const std::shared_ptr<spdlog::logger> logger = [] {
    auto l = spdlog::stderr_color_mt("deliver");
    const char* env = std::getenv("DELIVER_LOG");
    l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
    l->set_pattern("[%l] %v");
    return l;
  }();
  return *logger;
}

double parse_double(std::string_view s, std::string_view what) {
  // std::from_chars for double is missing from some standard libraries still in use.
  const std::string copy(s);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || errno == ERANGE) {
    throw CliError(exit_code::kParse, "bad number '" + copy + "' in " + std::string(what));
  }
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void emit(const std::optional<std::string>& path, std::string_view content, std::ostream& out) {
  if (path) {
    write_file(*path, content);
    log().info("wrote {}", *path);
  } else {
    out << content;
  }
}

std::vector<Site> robots_or_default(const std::optional<std::string>& spec) {
  return spec ? parse_robots(*spec) : default_robot_layout();
}

void write_messages(const std::optional<std::string>& path, const std::vector<HandoffMessage>& messages) {
  if (!path) return;
  std::string text;
  for (const HandoffMessage& m : messages) text += message_to_json(m) + "\n";
  write_file(*path, text);
}

}  // namespace

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::UnparsableCommand:
    case Errc::UnknownZone:
    case Errc::SameZone:
    case Errc::EndpointUnreachable:
    case Errc::MalformedResponse:
    case Errc::InvalidInterpreterConfig:
    case Errc::InvalidMap:
    case Errc::InvalidConfig:
      return exit_code::kParse;
    case Errc::TickBudgetExceeded:
    case Errc::IllegalTransition:
      return exit_code::kExecution;
    default:
      return exit_code::kPlanning;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(exit_code::kIo, "cannot read " + path + ": " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError(exit_code::kIo, "cannot write " + path + ": " + std::strerror(errno));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw CliError(exit_code::kIo, "write failed for " + path);
}

std::vector<Site> parse_robots(std::string_view text) {
  std::string pairs(text);
  std::replace(pairs.begin(), pairs.end(), ' ', ';');
  std::vector<Site> sites;
  for (const std::string& pair : split(pairs, ';')) {
    if (pair.empty()) continue;
    const auto xy = split(pair, ',');
    if (xy.size() != 2) throw CliError(exit_code::kParse, "robot position '" + pair + "' is not x,y");
    sites.push_back({RobotId{static_cast<std::uint32_t>(sites.size())},
                     {parse_double(xy[0], "--robots"), parse_double(xy[1], "--robots")}});
  }
  if (sites.empty()) throw CliError(exit_code::kParse, "--robots lists no positions");
  return sites;
}

std::vector<int> parse_team_sizes(std::string_view text) {
  std::vector<int> sizes;
  for (const std::string& part : split(text, ',')) {
    int n = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), n);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || n < 1) {
      throw CliError(exit_code::kParse, "bad team size '" + part + "'");
    }
    sizes.push_back(n);
  }
  return sizes;
}

std::vector<Site> default_robot_layout() {
  return {{RobotId{0}, {5.5, 15.5}}, {RobotId{1}, {14.5, 15.5}}, {RobotId{2}, {10.5, 3.5}}};
}

SemanticMap load_map(const std::optional<std::string>& path) {
  if (!path) return default_home_map();
  return map_from_json(read_file(*path));
}

SimConfig load_config(const std::optional<std::string>& path) {
  if (!path) return SimConfig{};
  return config_from_json(read_file(*path));
}

void cmd_partition(const PartitionArgs& args, std::ostream& out) {
  const SemanticMap map = load_map(args.map);
  const std::vector<Site> robots = robots_or_default(args.robots);
  const VoronoiDiagram diagram = compute_voronoi(robots, map.workspace());
  log().info("partitioned workspace among {} robots", robots.size());
  emit(args.out, diagram_to_json(diagram), out);
  if (args.svg) write_file(*args.svg, render_svg({&diagram, nullptr, &map}));
}

void cmd_plan(const PlanArgs& args, std::ostream& out) {
  const SemanticMap map = load_map(args.map);
  const std::vector<Site> robots = robots_or_default(args.robots);
  const TaskSpec task = interpret(args.command, map, args.interpreter);
  log().info("task: {} from {} to {}", task.item, task.pickup_zone, task.drop_zone);
  const VoronoiDiagram diagram = compute_voronoi(robots, map.workspace());
  const OccupancyGrid grid(map.workspace());
  const RelayPlan plan = build_relay_plan(task, robots, diagram, grid);
  log().info("{} active robots, {} transfers", plan.active.size(), plan.transfers.size());
  emit(args.out, plan_to_json(plan), out);
  if (args.svg) write_file(*args.svg, render_svg({&diagram, &plan, &map}));
}

int cmd_run(const RunArgs& args, std::ostream& out) {
  const int sources = (args.plan ? 1 : 0) + (args.command ? 1 : 0) + (args.team_size ? 1 : 0);
  if (sources != 1) throw CliError(exit_code::kParse, "run needs exactly one of --plan, --command, --team-size");

  SimConfig config = load_config(args.config);
  std::vector<Site> robots;
  TaskSpec task;
  std::optional<OccupancyGrid> grid;
  TrialOptions options;

  if (args.team_size) {
    if (!args.seed) throw CliError(exit_code::kParse, "--team-size requires --seed");
    config.seed = *args.seed;
    std::mt19937_64 rng(*args.seed);
    TrialSetup setup = generate_trial(*args.team_size, config, rng);
    robots = std::move(setup.robots);
    task = std::move(setup.task);
    grid.emplace(config.workspace());
    options.seed = *args.seed;
  } else {
    const SemanticMap map = load_map(args.map);
    grid.emplace(map.workspace());
    if (args.plan) {
      const RelayPlan plan = plan_from_json(read_file(*args.plan));
      robots = plan.robots;
      task = plan.task;
      if (robots.empty()) throw CliError(exit_code::kPlanning, "plan file lists no robots");
    } else {
      robots = robots_or_default(args.robots);
      task = interpret(*args.command, map, args.interpreter);
    }
    if (args.seed) options.seed = *args.seed;
  }

  const TrialRun run = run_trial(robots, task, *grid, config, options);
  log().info("relay {} after {} ticks, {} moves", run.record.completed ? "completed" : "stalled",
             run.record.ticks, run.record.total_moves);
  emit(args.out, trial_record_to_json(run.record) + "\n", out);
  write_messages(args.messages, run.messages);
  if (!run.record.completed) {
    log().error("tick budget of {} exhausted", config.effective_tick_budget());
    return exit_code::kExecution;
  }
  return exit_code::kOk;
}

BatchResult cmd_batch(const BatchArgs& args, std::ostream& out) {
  if (!args.seed) throw CliError(exit_code::kParse, "batch requires --seed");
  SimConfig config = load_config(args.config);
  config.seed = *args.seed;
  if (args.team_sizes) config.team_sizes = parse_team_sizes(*args.team_sizes);
  if (args.trials) config.trials_per_size = *args.trials;
  config.validate();

  log().info("running {} trials per team size", config.trials_per_size);
  BatchResult result = run_batch(config);
  std::string records;
  for (const TrialRecord& r : result.records) {
    if (!r.error.empty()) log().warn("trial {} (n={}): {}", r.trial_id, r.team_size, r.error);
    records += trial_record_to_json(r) + "\n";
  }
  write_file(args.out, summary_to_csv(result.summary));
  write_file(args.records, records);
  out << format_table(result.summary);
  return result;
}

void cmd_render(const RenderArgs& args) {
  if (!args.plan == !args.diagram) throw CliError(exit_code::kParse, "render needs exactly one of --plan, --diagram");
  const SemanticMap map = load_map(args.map);
  if (args.diagram) {
    const VoronoiDiagram diagram = diagram_from_json(read_file(*args.diagram));
    write_file(args.svg, render_svg({&diagram, nullptr, &map}));
    return;
  }
  const RelayPlan plan = plan_from_json(read_file(*args.plan));
  if (plan.robots.empty()) throw CliError(exit_code::kPlanning, "plan file lists no robots");
  const VoronoiDiagram diagram = compute_voronoi(plan.robots, map.workspace());
  write_file(args.svg, render_svg({&diagram, &plan, &map}));
}

std::string format_table(const BatchSummary& summary) {
  std::string text = " team | trials | total moves (mean +- std) | per active agent | active | baseline | reduction\n";
  text += "------+--------+---------------------------+------------------+--------+----------+----------\n";
  char line[200];
  for (const TeamSummary& r : summary.rows) {
    std::snprintf(line, sizeof line, " %4d | %6d | %12.2f +- %-10.2f | %16.2f | %6.2f | %8.2f | %8.1f%%\n",
                  r.team_size, r.completed, r.mean_total, r.std_total, r.mean_per_agent, r.mean_active,
                  r.mean_baseline, 100.0 * r.reduction);
    text += line;
  }
  return text;
}

}  // namespace deliver::tools
