#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "deliver/geometry.hpp"

namespace deliver {

struct GridCell {
  int col = 0;
  int row = 0;

  friend constexpr auto operator<=>(const GridCell&, const GridCell&) = default;
};

/// Chebyshev distance between two cells.
constexpr int chebyshev(GridCell a, GridCell b) noexcept {
  const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  return dc > dr ? dc : dr;
}

constexpr int manhattan(GridCell a, GridCell b) noexcept {
  return (a.col > b.col ? a.col - b.col : b.col - a.col) +
         (a.row > b.row ? a.row - b.row : b.row - a.row);
}

/// Grid overlay of a workspace. Cell extents are half-open, [x, x + dx).
class OccupancyGrid {
 public:
  explicit OccupancyGrid(Workspace workspace);
  OccupancyGrid(Workspace workspace, const std::vector<GridCell>& blocked);

  [[nodiscard]] const Workspace& workspace() const noexcept { return workspace_; }
  [[nodiscard]] int cols() const noexcept { return workspace_.grid_cols; }
  [[nodiscard]] int rows() const noexcept { return workspace_.grid_rows; }
  [[nodiscard]] int area() const noexcept { return cols() * rows(); }
  [[nodiscard]] double cell_width() const noexcept { return workspace_.width() / cols(); }
  [[nodiscard]] double cell_height() const noexcept { return workspace_.height() / rows(); }
  [[nodiscard]] double cell_diagonal() const noexcept;

  [[nodiscard]] bool in_bounds(GridCell c) const noexcept {
    return c.col >= 0 && c.row >= 0 && c.col < cols() && c.row < rows();
  }
  /// Row-major linear index; caller guarantees bounds.
  [[nodiscard]] int index(GridCell c) const noexcept { return c.row * cols() + c.col; }
  [[nodiscard]] GridCell cell_at(int index) const noexcept { return {index % cols(), index / cols()}; }

  /// Throws CellOutOfBounds.
  [[nodiscard]] bool blocked(GridCell c) const;
  void set_blocked(GridCell c, bool value = true);
  [[nodiscard]] std::vector<GridCell> blocked_cells() const;

 private:
  Workspace workspace_;
  std::vector<char> blocked_;
};

/// Cell whose half-open extent contains `point`. The max corner is excluded.
GridCell cell_of(Point point, const OccupancyGrid& grid);

Point center_of(GridCell cell, const OccupancyGrid& grid);

/// Lower-case, trim, and collapse internal whitespace.
std::string normalize_zone_name(std::string_view name);

struct Zone {
  std::string name;  // as written in the map file
  Point anchor;
};

/// Named zones grounding language to coordinates.
class SemanticMap {
 public:
  SemanticMap() = default;
  explicit SemanticMap(Workspace workspace) : workspace_(workspace) {}

  /// Throws InvalidMap on duplicate normalized names or anchors outside the workspace.
  void add_zone(std::string name, Point anchor);

  [[nodiscard]] const Workspace& workspace() const noexcept { return workspace_; }
  /// Zones ordered by normalized name.
  [[nodiscard]] const std::map<std::string, Zone>& zones() const noexcept { return zones_; }
  [[nodiscard]] std::vector<std::string> zone_names() const;
  [[nodiscard]] const Zone* find(std::string_view name) const;

 private:
  Workspace workspace_;
  std::map<std::string, Zone> zones_;
};

/// Throws UnknownZone.
Point resolve_zone(std::string_view name, const SemanticMap& map);

/// Five-zone home layout on a 20x20 unit grid (Kitchen, Living Area,
/// Storage Area, Bedroom, Bathroom).
SemanticMap default_home_map();

}  // namespace deliver
