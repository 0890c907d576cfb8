#include "render.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <string_view>

#include "deliver/serialization.hpp"

namespace deliver::tools {

namespace {

constexpr double kScale = 30.0;
constexpr double kMargin = 20.0;

constexpr const char* kPalette[] = {"#cfe2f3", "#d9ead3", "#fff2cc", "#f4cccc", "#d9d2e9",
                                    "#fce5cd", "#d0e0e3", "#ead1dc", "#e6e6e6", "#c9daf8"};

class Svg {
 public:
  explicit Svg(const Workspace& ws) : ws_(ws) {}

  [[nodiscard]] double x(double wx) const { return kMargin + (wx - ws_.min_corner.x) * kScale; }
  [[nodiscard]] double y(double wy) const { return kMargin + (ws_.max_corner.y - wy) * kScale; }

  void raw(std::string_view s) { body_ += s; }

  template <typename... Args>
  void printf(const char* fmt, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    body_ += buf;
  }

  [[nodiscard]] std::string finish() const {
    char head[256];
    std::snprintf(head, sizeof head,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n",
                  2 * kMargin + ws_.width() * kScale, 2 * kMargin + ws_.height() * kScale);
    return head + body_ + "</svg>\n";
  }

 private:
  Workspace ws_;
  std::string body_;
};

}  // namespace

std::string render_svg(const RenderInput& in) {
  const VoronoiDiagram& d = *in.diagram;
  const Workspace& ws = d.workspace;
  Svg svg(ws);

  std::set<RobotId> active;
  if (in.plan) active.insert(in.plan->active.begin(), in.plan->active.end());

  svg.raw("<g id=\"cells\">\n");
  for (const VoronoiCell& c : d.cells) {
    std::string pts;
    for (Point v : c.vertices) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", svg.x(v.x), svg.y(v.y));
      pts += buf;
    }
    svg.printf("<polygon class=\"cell\" data-robot=\"%u\" points=\"%s\" fill=\"%s\" stroke=\"none\"/>\n",
               index_of(c.site_id), pts.c_str(), kPalette[index_of(c.site_id) % std::size(kPalette)]);
  }
  svg.raw("</g>\n<g id=\"grid\" stroke=\"#bbbbbb\" stroke-width=\"0.5\">\n");
  const double dx = ws.width() / ws.grid_cols;
  const double dy = ws.height() / ws.grid_rows;
  for (int i = 0; i <= ws.grid_cols; ++i) {
    const double wx = ws.min_corner.x + i * dx;
    svg.printf("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", svg.x(wx), svg.y(ws.min_corner.y),
               svg.x(wx), svg.y(ws.max_corner.y));
  }
  for (int j = 0; j <= ws.grid_rows; ++j) {
    const double wy = ws.min_corner.y + j * dy;
    svg.printf("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", svg.x(ws.min_corner.x), svg.y(wy),
               svg.x(ws.max_corner.x), svg.y(wy));
  }
  svg.raw("</g>\n<g id=\"edges\" stroke=\"#333333\" stroke-width=\"2\">\n");
  for (const SharedEdge& e : all_shared_edges(d)) {
    svg.printf("<line class=\"edge\" data-a=\"%u\" data-b=\"%u\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n",
               index_of(e.site_a), index_of(e.site_b), svg.x(e.p1.x), svg.y(e.p1.y), svg.x(e.p2.x), svg.y(e.p2.y));
  }
  svg.raw("</g>\n");

  if (in.map) {
    svg.raw("<g id=\"zones\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#555555\">\n");
    for (const auto& [key, zone] : in.map->zones()) {
      svg.printf("<rect x=\"%.2f\" y=\"%.2f\" width=\"8\" height=\"8\" fill=\"#999999\"/>\n",
                 svg.x(zone.anchor.x) - 4, svg.y(zone.anchor.y) - 4);
      svg.printf("<text x=\"%.2f\" y=\"%.2f\">%s</text>\n", svg.x(zone.anchor.x) + 6, svg.y(zone.anchor.y) - 6,
                 zone.name.c_str());
    }
    svg.raw("</g>\n");
  }

  if (in.plan && !in.plan->path.cells.empty()) {
    const OccupancyGrid grid(ws);
    std::string pts;
    for (GridCell c : in.plan->path.cells) {
      const Point p = center_of(c, grid);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", svg.x(p.x), svg.y(p.y));
      pts += buf;
    }
    svg.printf("<polyline id=\"path\" points=\"%s\" fill=\"none\" stroke=\"#e69138\" stroke-width=\"3\" "
               "stroke-dasharray=\"6,4\"/>\n",
               pts.c_str());
  }

  if (in.plan) {
    const Point pu = in.plan->task.pickup;
    const Point dr = in.plan->task.drop;
    svg.printf("<rect id=\"pickup\" x=\"%.2f\" y=\"%.2f\" width=\"12\" height=\"12\" fill=\"#38761d\"/>\n",
               svg.x(pu.x) - 6, svg.y(pu.y) - 6);
    svg.printf("<rect id=\"drop\" x=\"%.2f\" y=\"%.2f\" width=\"12\" height=\"12\" fill=\"#990000\"/>\n",
               svg.x(dr.x) - 6, svg.y(dr.y) - 6);
    for (std::size_t k = 0; k < in.plan->transfers.size(); ++k) {
      const Point z = in.plan->transfers[k];
      svg.printf("<circle class=\"transfer\" cx=\"%.2f\" cy=\"%.2f\" r=\"6\" fill=\"#f1c232\" stroke=\"#000000\"/>\n",
                 svg.x(z.x), svg.y(z.y));
    }
  }

  svg.raw("<g id=\"sites\" font-family=\"sans-serif\" font-size=\"12\">\n");
  for (const VoronoiCell& c : d.cells) {
    const bool on = active.count(c.site_id) > 0;
    svg.printf("<circle class=\"site%s\" cx=\"%.2f\" cy=\"%.2f\" r=\"7\" fill=\"%s\"/>\n", on ? " active" : "",
               svg.x(c.site.x), svg.y(c.site.y), on ? "#0b5394" : "#666666");
    svg.printf("<text x=\"%.2f\" y=\"%.2f\">R%u</text>\n", svg.x(c.site.x) + 9, svg.y(c.site.y) + 4,
               index_of(c.site_id));
  }
  svg.raw("</g>\n");
  return svg.finish();
}

}  // namespace deliver::tools
