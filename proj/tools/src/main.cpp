#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace deliver;
using namespace deliver::tools;

namespace {

struct InterpreterFlags {
  std::string mode = "grammar";
  std::optional<std::string> endpoint;
  std::string fallback = "on";
  int timeout_ms = 2000;

  void attach(CLI::App* app) {
    app->add_option("--interpreter", mode, "Command interpreter")->check(CLI::IsMember({"grammar", "external"}));
    app->add_option("--endpoint", endpoint, "External interpreter URL (http://host:port/path)");
    app->add_option("--fallback", fallback, "Fall back to the grammar when the endpoint fails")
        ->check(CLI::IsMember({"on", "off"}));
    app->add_option("--timeout-ms", timeout_ms, "External interpreter timeout")->check(CLI::PositiveNumber);
  }

  [[nodiscard]] InterpreterConfig build() const {
    InterpreterConfig c;
    c.mode = mode == "external" ? InterpreterMode::External : InterpreterMode::Grammar;
    c.endpoint = endpoint;
    c.fallback = fallback == "on";
    c.timeout = std::chrono::milliseconds(timeout_ms);
    c.validate();
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Language-instructed multi-robot relay pickup-and-delivery"};
  app.require_subcommand(1);
  int status = exit_code::kOk;

  PartitionArgs part;
  auto* partition = app.add_subcommand("partition", "Voronoi partition of the workspace");
  partition->add_option("--map", part.map, "Semantic map JSON");
  partition->add_option("--robots", part.robots, "Robot positions, \"x,y;x,y;...\" or \"x,y x,y\"");
  partition->add_option("--out", part.out, "Diagram JSON (default: stdout)");
  partition->add_option("--svg", part.svg, "SVG rendering");

  PlanArgs plan_args;
  InterpreterFlags plan_interp;
  auto* plan = app.add_subcommand("plan", "Relay plan for a spoken-style command");
  plan->add_option("--command", plan_args.command, "Command text")->required();
  plan->add_option("--map", plan_args.map, "Semantic map JSON");
  plan->add_option("--robots", plan_args.robots, "Robot positions, \"x,y;x,y;...\" or \"x,y x,y\"");
  plan->add_option("--out", plan_args.out, "Plan JSON (default: stdout)");
  plan->add_option("--svg", plan_args.svg, "SVG rendering");
  plan_interp.attach(plan);

  RunArgs run_args;
  InterpreterFlags run_interp;
  auto* run = app.add_subcommand("run", "Execute one trial");
  run->add_option("--plan", run_args.plan, "Plan JSON from `plan`");
  run->add_option("--command", run_args.command, "Command text");
  run->add_option("--team-size", run_args.team_size, "Random trial with this many robots")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", run_args.seed, "Seed for a random trial");
  run->add_option("--map", run_args.map, "Semantic map JSON");
  run->add_option("--robots", run_args.robots, "Robot positions, \"x,y;x,y;...\" or \"x,y x,y\"");
  run->add_option("--config", run_args.config, "Simulation config JSON");
  run->add_option("--out", run_args.out, "Trial record JSON line (default: stdout)");
  run->add_option("--messages", run_args.messages, "Message log, JSON lines");
  run_interp.attach(run);

  BatchArgs batch_args;
  auto* batch = app.add_subcommand("batch", "Seeded batch of trials per team size");
  batch->add_option("--config", batch_args.config, "Simulation config JSON");
  batch->add_option("--seed", batch_args.seed, "Master seed")->required();
  batch->add_option("--team-sizes", batch_args.team_sizes, "Comma-separated team sizes");
  batch->add_option("--trials", batch_args.trials, "Trials per team size")->check(CLI::PositiveNumber);
  batch->add_option("--out", batch_args.out, "Summary CSV")->capture_default_str();
  batch->add_option("--records", batch_args.records, "Per-trial JSON lines")->capture_default_str();

  RenderArgs render_args;
  auto* render = app.add_subcommand("render", "SVG of a plan or diagram file");
  render->add_option("--plan", render_args.plan, "Plan JSON");
  render->add_option("--diagram", render_args.diagram, "Diagram JSON");
  render->add_option("--map", render_args.map, "Semantic map JSON (zone labels, workspace)");
  render->add_option("--svg", render_args.svg, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_code::kOk : exit_code::kParse;
  }

  try {
    if (*partition) {
      cmd_partition(part, std::cout);
    } else if (*plan) {
      plan_args.interpreter = plan_interp.build();
      cmd_plan(plan_args, std::cout);
    } else if (*run) {
      run_args.interpreter = run_interp.build();
      status = cmd_run(run_args, std::cout);
    } else if (*batch) {
      cmd_batch(batch_args, std::cout);
    } else if (*render) {
      cmd_render(render_args);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  std::cout.flush();
  return status;
}
