#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace deliver {

/// Robot identifier. Ordered; lower ids win every tie in the library.
enum class RobotId : std::uint32_t {};

constexpr std::uint32_t index_of(RobotId id) noexcept { return static_cast<std::uint32_t>(id); }

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point p) noexcept { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point a, Point b) noexcept = default;
};

constexpr double dot(Point a, Point b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) noexcept { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) noexcept { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) noexcept { return norm(a - b); }
constexpr double squared_distance(Point a, Point b) noexcept { return dot(a - b, a - b); }
constexpr Point midpoint(Point a, Point b) noexcept { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
inline bool is_finite(Point p) noexcept { return std::isfinite(p.x) && std::isfinite(p.y); }

namespace tolerance {
/// Minimum separation between two Voronoi sites.
inline constexpr double kSiteSeparation = 1e-6;
/// Absolute tolerance for on-segment / equidistance tests.
inline constexpr double kGeometric = 1e-9;
/// Relative threshold for treating an edge as parallel to a bisector.
inline constexpr double kParallel = 1e-9;
}  // namespace tolerance

/// Axis-aligned rectangle with a grid overlay.
struct Workspace {
  Point min_corner{0.0, 0.0};
  Point max_corner{20.0, 20.0};
  int grid_cols = 20;
  int grid_rows = 20;

  [[nodiscard]] double width() const noexcept { return max_corner.x - min_corner.x; }
  [[nodiscard]] double height() const noexcept { return max_corner.y - min_corner.y; }
  /// Closed-rectangle containment.
  [[nodiscard]] bool contains(Point p) const noexcept {
    return p.x >= min_corner.x && p.x <= max_corner.x && p.y >= min_corner.y && p.y <= max_corner.y;
  }
  /// Throws InvalidWorkspace unless the corners are ordered and the grid is non-empty.
  void validate() const;

  friend bool operator==(const Workspace&, const Workspace&) = default;
};

/// Square workspace [0, cols] x [0, rows] with unit cells.
Workspace unit_grid_workspace(int cols, int rows);

struct Site {
  RobotId id{};
  Point position;
};

struct VoronoiCell {
  RobotId site_id{};
  Point site;
  std::vector<Point> vertices;  // counter-clockwise, convex
};

struct VoronoiDiagram {
  std::vector<VoronoiCell> cells;  // sorted by site_id
  Workspace workspace;

  /// Throws UnknownRobotId if absent.
  [[nodiscard]] const VoronoiCell& cell(RobotId id) const;
  [[nodiscard]] bool has(RobotId id) const noexcept;
};

struct SharedEdge {
  RobotId site_a{};
  RobotId site_b{};
  Point p1;
  Point p2;

  [[nodiscard]] double length() const noexcept { return distance(p1, p2); }
};

/// Which branch of the minimax search produced a relay point.
enum class RelayCase {
  OnBisector,   // edge lies on the bisector; midpoint projected and clamped
  Crossing,     // edge crosses the bisector and the crossing is optimal
  Projection,   // one site dominates; interior foot of the farther site
  Endpoint,     // a segment endpoint is optimal
};

struct RelayPoint {
  Point point;
  double max_distance = 0.0;
  RelayCase kind = RelayCase::OnBisector;
};

/// Bounded Voronoi diagram by half-plane clipping of the workspace rectangle.
VoronoiDiagram compute_voronoi(std::span<const Site> sites, const Workspace& workspace);

/// Owner of `point`: the nearest site, exact ties to the lowest id.
RobotId locate(Point point, const VoronoiDiagram& diagram);

/// Positive-length common boundary of two cells, or nullopt.
std::optional<SharedEdge> shared_edge(const VoronoiDiagram& diagram, RobotId i, RobotId j);

/// Point on `edge` minimising max(|z - a|, |z - b|).
RelayPoint relay_point(Point a, Point b, const SharedEdge& edge);

/// Orthogonal projection of `point` onto segment p1-p2, clamped to the endpoints.
Point project_clamp(Point point, Point p1, Point p2);

/// Closed containment test for a convex counter-clockwise polygon.
bool polygon_contains(std::span<const Point> polygon, Point p, double tol = tolerance::kGeometric);

double polygon_area(std::span<const Point> polygon);

}  // namespace deliver
