#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include "deliver/geometry.hpp"
#include "deliver/world.hpp"

namespace deliver {

/// Structured pickup-and-delivery request.
struct TaskSpec {
  Point pickup;
  Point drop;
  std::string item;
  std::string source_text;
  // Normalized zone names when the task came from language; empty otherwise.
  std::string pickup_zone;
  std::string drop_zone;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

enum class InterpreterMode { Grammar, External };

struct InterpreterConfig {
  InterpreterMode mode = InterpreterMode::Grammar;
  std::optional<std::string> endpoint;  // http://host:port/path, required for External
  std::chrono::milliseconds timeout{2000};
  bool fallback = true;

  /// Throws InvalidInterpreterConfig unless endpoint is present iff mode is External.
  void validate() const;
};

/// Grammar parser for "<verb> <item> from <zone> to <zone>".
///
/// Verbs: bring, take, deliver, carry, move. Case, surrounding punctuation,
/// articles (a, an, the) and the politeness fillers "please" / "can you" /
/// "could you" / "would you" are ignored. Throws UnparsableCommand,
/// UnknownZone or SameZone.
TaskSpec parse_command(std::string_view text, const SemanticMap& map);

/// Queries an external interpreter over HTTP.
///
/// Request:  POST {"command": text, "zones": [names...]}
/// Response: {"pickup": name, "drop": name, "item": string}
///
/// Transport failures and malformed bodies fall back to parse_command when
/// config.fallback is set; otherwise they raise EndpointUnreachable or
/// MalformedResponse. Zones named by the endpoint that the map does not know
/// always raise UnknownZone.
TaskSpec interpret_external(std::string_view text, const SemanticMap& map,
                            const InterpreterConfig& config);

/// Dispatches on config.mode.
TaskSpec interpret(std::string_view text, const SemanticMap& map, const InterpreterConfig& config);

/// Returns `task` unchanged if both endpoints lie in the workspace and differ.
TaskSpec validate_task(const TaskSpec& task, const Workspace& workspace);

}  // namespace deliver
