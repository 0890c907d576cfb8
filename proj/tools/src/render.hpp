#pragma once

#include <string>

#include "deliver/geometry.hpp"
#include "deliver/planning.hpp"
#include "deliver/world.hpp"

namespace deliver::tools {

struct RenderInput {
  const VoronoiDiagram* diagram = nullptr;  // required
  const RelayPlan* plan = nullptr;          // path, transfers, active robots
  const SemanticMap* map = nullptr;         // zone labels
};

/// Static SVG of cells, shared edges and sites, plus the plan overlay when given.
std::string render_svg(const RenderInput& input);

}  // namespace deliver::tools
