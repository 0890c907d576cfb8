#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace deliver {

enum class Errc {
  // geometry
  EmptySites,
  SiteOutsideWorkspace,
  SitesTooClose,
  PointOutsideWorkspace,
  UnknownRobotId,
  DegenerateSites,
  DegenerateEdge,
  InvalidWorkspace,
  // world
  CellOutOfBounds,
  UnknownZone,
  InvalidMap,
  // nlu
  UnparsableCommand,
  SameZone,
  EndpointUnreachable,
  MalformedResponse,
  InvalidInterpreterConfig,
  // planning
  NoPath,
  BlockedEndpoint,
  InvalidPlan,
  // coordination
  IllegalTransition,
  // simulation
  PlacementExhausted,
  TickBudgetExceeded,
  NoCompletedTrials,
  InvalidConfig,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (notably the CLI) can map them onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace deliver
