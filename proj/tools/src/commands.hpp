#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "deliver/error.hpp"
#include "deliver/geometry.hpp"
#include "deliver/nlu.hpp"
#include "deliver/simulation.hpp"
#include "deliver/world.hpp"

namespace deliver::tools {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kParse = 2;      // usage, config, map, command text
inline constexpr int kPlanning = 3;   // geometry, paths, plan files
inline constexpr int kExecution = 4;  // trial did not complete
inline constexpr int kIo = 5;
}  // namespace exit_code

int exit_code_for(Errc code) noexcept;

/// Failure that is not a library error: bad flags, unreadable files.
class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& what) : std::runtime_error(what), exit_code_(exit_code) {}
  [[nodiscard]] int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// "x,y;x,y;..." (or space-separated pairs) -> sites with ids 0..n-1.
std::vector<Site> parse_robots(std::string_view text);
/// "1,3,5" -> {1, 3, 5}.
std::vector<int> parse_team_sizes(std::string_view text);

/// Three robots on the home map: one in the kitchen's half, one in the
/// bedroom's half, one near the storage area.
std::vector<Site> default_robot_layout();

SemanticMap load_map(const std::optional<std::string>& path);
SimConfig load_config(const std::optional<std::string>& path);

struct PartitionArgs {
  std::optional<std::string> map;
  std::optional<std::string> robots;
  std::optional<std::string> out;  // diagram JSON; stdout when absent
  std::optional<std::string> svg;
};
void cmd_partition(const PartitionArgs& args, std::ostream& out);

struct PlanArgs {
  std::string command;
  std::optional<std::string> map;
  std::optional<std::string> robots;
  InterpreterConfig interpreter;
  std::optional<std::string> out;  // plan JSON; stdout when absent
  std::optional<std::string> svg;
};
void cmd_plan(const PlanArgs& args, std::ostream& out);

/// Exactly one source: a plan file, a command (with map and robots), or a
/// seeded random trial of the given team size.
struct RunArgs {
  std::optional<std::string> plan;
  std::optional<std::string> command;
  std::optional<std::uint64_t> seed;
  std::optional<int> team_size;
  std::optional<std::string> map;
  std::optional<std::string> robots;
  std::optional<std::string> config;
  InterpreterConfig interpreter;
  std::optional<std::string> out;       // TrialRecord JSON line; stdout when absent
  std::optional<std::string> messages;  // message log, JSON lines
};
/// Returns kOk when the relay completed, kExecution otherwise.
int cmd_run(const RunArgs& args, std::ostream& out);

struct BatchArgs {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;  // required
  std::optional<std::string> team_sizes;
  std::optional<int> trials;
  std::string out = "summary.csv";
  std::string records = "trials.jsonl";
};
/// Writes the CSV and JSONL files and prints a table to `out`.
BatchResult cmd_batch(const BatchArgs& args, std::ostream& out);

struct RenderArgs {
  std::optional<std::string> plan;
  std::optional<std::string> diagram;
  std::optional<std::string> map;
  std::string svg;
};
void cmd_render(const RenderArgs& args);

std::string format_table(const BatchSummary& summary);

}  // namespace deliver::tools
