#include "deliver/world.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "deliver/error.hpp"

namespace deliver {

namespace {

std::string describe(GridCell c) {
  return "[" + std::to_string(c.col) + ", " + std::to_string(c.row) + "]";
}

}  // namespace

OccupancyGrid::OccupancyGrid(Workspace workspace)
    : workspace_(workspace),
      blocked_(static_cast<std::size_t>(workspace.grid_cols) *
                   static_cast<std::size_t>(workspace.grid_rows > 0 ? workspace.grid_rows : 0),
               0) {
  workspace_.validate();
}

OccupancyGrid::OccupancyGrid(Workspace workspace, const std::vector<GridCell>& blocked)
    : OccupancyGrid(workspace) {
  for (GridCell c : blocked) set_blocked(c);
}

double OccupancyGrid::cell_diagonal() const noexcept {
  return std::hypot(cell_width(), cell_height());
}

bool OccupancyGrid::blocked(GridCell c) const {
  if (!in_bounds(c)) throw Error(Errc::CellOutOfBounds, describe(c));
  return blocked_[static_cast<std::size_t>(index(c))] != 0;
}

void OccupancyGrid::set_blocked(GridCell c, bool value) {
  if (!in_bounds(c)) throw Error(Errc::CellOutOfBounds, describe(c));
  blocked_[static_cast<std::size_t>(index(c))] = value ? 1 : 0;
}

std::vector<GridCell> OccupancyGrid::blocked_cells() const {
  std::vector<GridCell> out;
  for (int i = 0; i < area(); ++i) {
    if (blocked_[static_cast<std::size_t>(i)] != 0) out.push_back(cell_at(i));
  }
  return out;
}

GridCell cell_of(Point point, const OccupancyGrid& grid) {
  const Workspace& ws = grid.workspace();
  if (!is_finite(point) || point.x < ws.min_corner.x || point.y < ws.min_corner.y ||
      point.x >= ws.max_corner.x || point.y >= ws.max_corner.y) {
    throw Error(Errc::PointOutsideWorkspace,
                "(" + std::to_string(point.x) + ", " + std::to_string(point.y) + ")");
  }
  GridCell c{static_cast<int>(std::floor((point.x - ws.min_corner.x) / grid.cell_width())),
             static_cast<int>(std::floor((point.y - ws.min_corner.y) / grid.cell_height()))};
  // Rounding right below the max corner can land one past the last cell.
  if (c.col >= grid.cols()) c.col = grid.cols() - 1;
  if (c.row >= grid.rows()) c.row = grid.rows() - 1;
  return c;
}

Point center_of(GridCell cell, const OccupancyGrid& grid) {
  if (!grid.in_bounds(cell)) throw Error(Errc::CellOutOfBounds, describe(cell));
  const Workspace& ws = grid.workspace();
  return {ws.min_corner.x + (cell.col + 0.5) * grid.cell_width(),
          ws.min_corner.y + (cell.row + 0.5) * grid.cell_height()};
}

std::string normalize_zone_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  bool pending_space = false;
  for (char ch : name) {
    const auto uch = static_cast<unsigned char>(ch);
    if (std::isspace(uch)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(uch)));
  }
  return out;
}

void SemanticMap::add_zone(std::string name, Point anchor) {
  std::string key = normalize_zone_name(name);
  if (key.empty()) throw Error(Errc::InvalidMap, "zone name is empty");
  if (!is_finite(anchor) || !workspace_.contains(anchor)) {
    throw Error(Errc::InvalidMap, "zone '" + name + "' anchor lies outside the workspace");
  }
  if (zones_.contains(key)) throw Error(Errc::InvalidMap, "duplicate zone '" + name + "'");
  zones_.emplace(std::move(key), Zone{std::move(name), anchor});
}

std::vector<std::string> SemanticMap::zone_names() const {
  std::vector<std::string> names;
  names.reserve(zones_.size());
  for (const auto& [key, zone] : zones_) names.push_back(zone.name);
  return names;
}

const Zone* SemanticMap::find(std::string_view name) const {
  auto it = zones_.find(normalize_zone_name(name));
  return it == zones_.end() ? nullptr : &it->second;
}

Point resolve_zone(std::string_view name, const SemanticMap& map) {
  if (const Zone* zone = map.find(name)) return zone->anchor;
  throw Error(Errc::UnknownZone, "'" + std::string(name) + "'");
}

SemanticMap default_home_map() {
  SemanticMap map(unit_grid_workspace(20, 20));
  map.add_zone("Kitchen", {3.5, 16.5});
  map.add_zone("Living Area", {10.5, 10.5});
  map.add_zone("Storage Area", {16.5, 3.5});
  map.add_zone("Bedroom", {16.5, 16.5});
  map.add_zone("Bathroom", {3.5, 3.5});
  return map;
}

}  // namespace deliver
