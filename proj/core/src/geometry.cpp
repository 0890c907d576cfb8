#include "deliver/geometry.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <tuple>

#include "deliver/error.hpp"

namespace deliver {

namespace {

std::string describe(Point p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

bool strictly_inside(const Workspace& ws, Point p) {
  return p.x > ws.min_corner.x && p.x < ws.max_corner.x && p.y > ws.min_corner.y &&
         p.y < ws.max_corner.y;
}

// Keeps the part of a convex polygon where dot(p - anchor, normal) <= 0.
std::vector<Point> clip_half_plane(const std::vector<Point>& polygon, Point anchor, Point normal) {
  std::vector<Point> out;
  out.reserve(polygon.size() + 1);
  const std::size_t n = polygon.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point cur = polygon[k];
    const Point nxt = polygon[(k + 1) % n];
    const double sc = dot(cur - anchor, normal);
    const double sn = dot(nxt - anchor, normal);
    if (sc <= 0.0) out.push_back(cur);
    if ((sc < 0.0 && sn > 0.0) || (sc > 0.0 && sn < 0.0)) {
      const double t = sc / (sc - sn);
      out.push_back(cur + t * (nxt - cur));
    }
  }

  // Drop coincident neighbours introduced when the line passes through a vertex.
  std::vector<Point> dedup;
  dedup.reserve(out.size());
  for (const Point& p : out) {
    if (dedup.empty() || squared_distance(dedup.back(), p) > 1e-24) dedup.push_back(p);
  }
  while (dedup.size() > 1 && squared_distance(dedup.front(), dedup.back()) <= 1e-24) {
    dedup.pop_back();
  }
  return dedup;
}

double max_distance(Point z, Point a, Point b) {
  return std::max(distance(z, a), distance(z, b));
}

}  // namespace

void Workspace::validate() const {
  if (!is_finite(min_corner) || !is_finite(max_corner) || !(min_corner.x < max_corner.x) ||
      !(min_corner.y < max_corner.y)) {
    throw Error(Errc::InvalidWorkspace,
                "corners " + describe(min_corner) + " / " + describe(max_corner) + " are not ordered");
  }
  if (grid_cols < 1 || grid_rows < 1) {
    throw Error(Errc::InvalidWorkspace, "grid dimensions must be positive");
  }
}

Workspace unit_grid_workspace(int cols, int rows) {
  Workspace ws{{0.0, 0.0}, {static_cast<double>(cols), static_cast<double>(rows)}, cols, rows};
  ws.validate();
  return ws;
}

const VoronoiCell& VoronoiDiagram::cell(RobotId id) const {
  auto it = std::lower_bound(cells.begin(), cells.end(), id,
                             [](const VoronoiCell& c, RobotId key) { return c.site_id < key; });
  if (it == cells.end() || it->site_id != id) {
    throw Error(Errc::UnknownRobotId, "robot " + std::to_string(index_of(id)) + " is not a site");
  }
  return *it;
}

bool VoronoiDiagram::has(RobotId id) const noexcept {
  auto it = std::lower_bound(cells.begin(), cells.end(), id,
                             [](const VoronoiCell& c, RobotId key) { return c.site_id < key; });
  return it != cells.end() && it->site_id == id;
}

VoronoiDiagram compute_voronoi(std::span<const Site> sites, const Workspace& workspace) {
  workspace.validate();
  if (sites.empty()) throw Error(Errc::EmptySites, "at least one site is required");

  std::vector<Site> sorted(sites.begin(), sites.end());
  std::sort(sorted.begin(), sorted.end(), [](const Site& a, const Site& b) { return a.id < b.id; });

  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Site& s = sorted[i];
    if (!is_finite(s.position) || !strictly_inside(workspace, s.position)) {
      throw Error(Errc::SiteOutsideWorkspace,
                  "site " + std::to_string(index_of(s.id)) + " at " + describe(s.position));
    }
    if (i > 0 && sorted[i - 1].id == s.id) {
      throw Error(Errc::UnknownRobotId, "duplicate robot id " + std::to_string(index_of(s.id)));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (distance(sorted[j].position, s.position) < tolerance::kSiteSeparation) {
        throw Error(Errc::SitesTooClose, "sites " + std::to_string(index_of(sorted[j].id)) +
                                             " and " + std::to_string(index_of(s.id)));
      }
    }
  }

  const std::vector<Point> rectangle{workspace.min_corner,
                                     {workspace.max_corner.x, workspace.min_corner.y},
                                     workspace.max_corner,
                                     {workspace.min_corner.x, workspace.max_corner.y}};

  VoronoiDiagram diagram;
  diagram.workspace = workspace;
  diagram.cells.reserve(sorted.size());
  for (const Site& site : sorted) {
    std::vector<Point> polygon = rectangle;
    for (const Site& other : sorted) {
      if (other.id == site.id) continue;
      polygon = clip_half_plane(polygon, midpoint(site.position, other.position),
                                other.position - site.position);
    }
    diagram.cells.push_back({site.id, site.position, std::move(polygon)});
  }
  return diagram;
}

bool polygon_contains(std::span<const Point> polygon, Point p, double tol) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t k = 0; k < n; ++k) {
    const Point a = polygon[k];
    const Point b = polygon[(k + 1) % n];
    const Point edge = b - a;
    if (cross(edge, p - a) < -tol * norm(edge)) return false;
  }
  return true;
}

double polygon_area(std::span<const Point> polygon) {
  double twice = 0.0;
  for (std::size_t k = 0; k < polygon.size(); ++k) {
    twice += cross(polygon[k], polygon[(k + 1) % polygon.size()]);
  }
  return 0.5 * twice;
}

RobotId locate(Point point, const VoronoiDiagram& diagram) {
  if (!is_finite(point) || !diagram.workspace.contains(point)) {
    throw Error(Errc::PointOutsideWorkspace, describe(point));
  }
  // Polygon containment narrows the candidates; the distance comparison then
  // settles boundary points (several cells contain them) by proximity and id.
  const VoronoiCell* best = nullptr;
  double best_d2 = 0.0;
  auto consider = [&](const VoronoiCell& cell) {
    const double d2 = squared_distance(point, cell.site);
    if (best == nullptr || d2 < best_d2) {
      best = &cell;
      best_d2 = d2;
    }
  };
  for (const VoronoiCell& cell : diagram.cells) {
    if (polygon_contains(cell.vertices, point)) consider(cell);
  }
  if (best == nullptr) {
    for (const VoronoiCell& cell : diagram.cells) consider(cell);
  }
  return best->site_id;
}

std::optional<SharedEdge> shared_edge(const VoronoiDiagram& diagram, RobotId i, RobotId j) {
  const VoronoiCell& cell_i = diagram.cell(i);
  const VoronoiCell& cell_j = diagram.cell(j);
  if (i == j) {
    throw Error(Errc::DegenerateSites, "shared_edge needs two distinct robots");
  }

  // Always derive the segment from the lower id's polygon so (i, j) and
  // (j, i) yield bit-identical endpoints.
  const VoronoiCell& lo = i < j ? cell_i : cell_j;
  const VoronoiCell& hi = i < j ? cell_j : cell_i;
  const Point normal = hi.site - lo.site;
  const double normal_len = norm(normal);
  const Point mid = midpoint(lo.site, hi.site);

  std::vector<Point> on_bisector;
  for (const Point& v : lo.vertices) {
    if (std::abs(dot(v - mid, normal)) / normal_len <= tolerance::kGeometric) {
      on_bisector.push_back(v);
    }
  }
  if (on_bisector.size() < 2) return std::nullopt;

  Point p1 = on_bisector[0];
  Point p2 = on_bisector[1];
  double best = -1.0;
  for (std::size_t a = 0; a < on_bisector.size(); ++a) {
    for (std::size_t b = a + 1; b < on_bisector.size(); ++b) {
      const double d2 = squared_distance(on_bisector[a], on_bisector[b]);
      if (d2 > best) {
        best = d2;
        p1 = on_bisector[a];
        p2 = on_bisector[b];
      }
    }
  }
  if (distance(p1, p2) <= tolerance::kGeometric) return std::nullopt;
  if (std::tie(p2.x, p2.y) < std::tie(p1.x, p1.y)) std::swap(p1, p2);
  return SharedEdge{i, j, p1, p2};
}

Point project_clamp(Point point, Point p1, Point p2) {
  const Point e = p2 - p1;
  const double len2 = dot(e, e);
  if (len2 == 0.0) throw Error(Errc::DegenerateEdge, "segment endpoints coincide at " + describe(p1));
  const double t = std::clamp(dot(point - p1, e) / len2, 0.0, 1.0);
  return p1 + t * e;
}

RelayPoint relay_point(Point a, Point b, const SharedEdge& edge) {
  if (a == b) throw Error(Errc::DegenerateSites, "relay endpoints coincide at " + describe(a));
  if (edge.p1 == edge.p2) {
    throw Error(Errc::DegenerateEdge, "edge endpoints coincide at " + describe(edge.p1));
  }

  const Point p1 = edge.p1;
  const Point p2 = edge.p2;
  const Point e = p2 - p1;
  const Point d = b - a;
  const Point bisector{-d.y, d.x};
  const Point mid = midpoint(a, b);
  const double denom = cross(e, bisector);
  const bool parallel = std::abs(denom) < tolerance::kParallel * norm(e) * norm(bisector);

  if (parallel && std::abs(dot(p1 - mid, d)) / norm(d) <= tolerance::kGeometric) {
    // The whole edge is equidistant from a and b, so the nearest edge point
    // to the midpoint minimises both distances at once.
    const Point z = project_clamp(mid, p1, p2);
    return {z, max_distance(z, a, b), RelayCase::OnBisector};
  }

  // max(|z-a|, |z-b|) is convex along the segment. Its minimiser is the
  // bisector crossing, the foot of the farther site on its own side, or an
  // endpoint; score every candidate and keep the first strict minimum.
  std::array<RelayPoint, 5> candidates{};
  std::size_t count = 0;
  auto push = [&](Point z, RelayCase kind) {
    candidates[count++] = {z, max_distance(z, a, b), kind};
  };

  if (!parallel) {
    // p1 + t e = mid + s bisector  <=>  [e  -bisector] [t s]^T = mid - p1
    const Point rhs = mid - p1;
    const double t = cross(rhs, bisector) / denom;
    if (t >= 0.0 && t <= 1.0) push(p1 + t * e, RelayCase::Crossing);
  }
  for (Point site : {a, b}) {
    const double t = dot(site - p1, e) / dot(e, e);
    if (t > 0.0 && t < 1.0) push(p1 + t * e, RelayCase::Projection);
  }
  push(p1, RelayCase::Endpoint);
  push(p2, RelayCase::Endpoint);

  const RelayPoint* best = &candidates[0];
  for (std::size_t k = 1; k < count; ++k) {
    if (candidates[k].max_distance < best->max_distance) best = &candidates[k];
  }
  return *best;
}

}  // namespace deliver
