#include "deliver/error.hpp"

namespace deliver {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptySites: return "EmptySites";
    case Errc::SiteOutsideWorkspace: return "SiteOutsideWorkspace";
    case Errc::SitesTooClose: return "SitesTooClose";
    case Errc::PointOutsideWorkspace: return "PointOutsideWorkspace";
    case Errc::UnknownRobotId: return "UnknownRobotId";
    case Errc::DegenerateSites: return "DegenerateSites";
    case Errc::DegenerateEdge: return "DegenerateEdge";
    case Errc::InvalidWorkspace: return "InvalidWorkspace";
    case Errc::CellOutOfBounds: return "CellOutOfBounds";
    case Errc::UnknownZone: return "UnknownZone";
    case Errc::InvalidMap: return "InvalidMap";
    case Errc::UnparsableCommand: return "UnparsableCommand";
    case Errc::SameZone: return "SameZone";
    case Errc::EndpointUnreachable: return "EndpointUnreachable";
    case Errc::MalformedResponse: return "MalformedResponse";
    case Errc::InvalidInterpreterConfig: return "InvalidInterpreterConfig";
    case Errc::NoPath: return "NoPath";
    case Errc::BlockedEndpoint: return "BlockedEndpoint";
    case Errc::InvalidPlan: return "InvalidPlan";
    case Errc::IllegalTransition: return "IllegalTransition";
    case Errc::PlacementExhausted: return "PlacementExhausted";
    case Errc::TickBudgetExceeded: return "TickBudgetExceeded";
    case Errc::NoCompletedTrials: return "NoCompletedTrials";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace deliver
