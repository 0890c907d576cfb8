#pragma once

// JSON / JSON-lines / CSV encodings for the files the library reads and
// writes. Everything returns or accepts text so the JSON library stays an
// implementation detail. Parsers throw deliver::Error (InvalidMap,
// InvalidPlan, InvalidConfig) on bad input.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deliver/coordination.hpp"
#include "deliver/geometry.hpp"
#include "deliver/planning.hpp"
#include "deliver/simulation.hpp"
#include "deliver/world.hpp"

namespace deliver {

// {"zones": {"<name>": [x, y], ...},
//  "workspace": {"min": [x, y], "max": [x, y], "cols": C, "rows": R}}
SemanticMap map_from_json(std::string_view text);
std::string map_to_json(const SemanticMap& map);

// [[col, row], ...]
std::vector<GridCell> occupancy_from_json(std::string_view text);
std::string occupancy_to_json(std::span<const GridCell> cells);

// {"workspace": {...}, "cells": [{"id", "site", "vertices"}], "edges": [{"a", "b", "p1", "p2"}]}
std::string diagram_to_json(const VoronoiDiagram& diagram);
VoronoiDiagram diagram_from_json(std::string_view text);

/// Every positive-length shared edge, pairs in ascending id order.
std::vector<SharedEdge> all_shared_edges(const VoronoiDiagram& diagram);

// {"task", "robots", "active", "transfers", "transfer_on_edge", "segments", "path", "baseline"}
std::string plan_to_json(const RelayPlan& plan);
RelayPlan plan_from_json(std::string_view text);

/// Structural check of a plan document; empty when it conforms.
std::vector<std::string> validate_plan_json(std::string_view text);

/// One JSON object per line, no trailing newline.
std::string message_to_json(const HandoffMessage& message);
HandoffMessage message_from_json(std::string_view line);
std::string trial_record_to_json(const TrialRecord& record);
TrialRecord trial_record_from_json(std::string_view line);

std::string config_to_json(const SimConfig& config);
SimConfig config_from_json(std::string_view text);

/// team_size,mean_total,std_total,mean_per_agent,mean_active,reduction
std::string summary_to_csv(const BatchSummary& summary);

}  // namespace deliver
