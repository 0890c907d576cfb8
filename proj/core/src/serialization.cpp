#include "deliver/serialization.hpp"

#include <cstdio>
#include <string>

#include <json.hpp>

#include "deliver/error.hpp"

namespace deliver {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(Point p) { return Json::array({p.x, p.y}); }
Json to_json(GridCell c) { return Json::array({c.col, c.row}); }
Json to_json(RobotId id) {
  if (id == kCoordinator) return "coordinator";
  return index_of(id);
}

Point point_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("expected [x, y], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

GridCell cell_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw std::invalid_argument("expected [col, row], got " + j.dump());
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

RobotId id_from(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "coordinator") return kCoordinator;
  if (!j.is_number_unsigned()) throw std::invalid_argument("expected robot id, got " + j.dump());
  return RobotId{j.get<std::uint32_t>()};
}

Json workspace_json(const Workspace& ws) {
  Json j;
  j["min"] = to_json(ws.min_corner);
  j["max"] = to_json(ws.max_corner);
  j["cols"] = ws.grid_cols;
  j["rows"] = ws.grid_rows;
  return j;
}

Workspace workspace_from(const Json& j) {
  Workspace ws{point_from(j.at("min")), point_from(j.at("max")), j.at("cols").get<int>(),
               j.at("rows").get<int>()};
  ws.validate();
  return ws;
}

Json task_json(const TaskSpec& t) {
  Json j;
  j["pickup"] = to_json(t.pickup);
  j["drop"] = to_json(t.drop);
  j["item"] = t.item;
  j["source_text"] = t.source_text;
  j["pickup_zone"] = t.pickup_zone;
  j["drop_zone"] = t.drop_zone;
  return j;
}

TaskSpec task_from(const Json& j) {
  TaskSpec t;
  t.pickup = point_from(j.at("pickup"));
  t.drop = point_from(j.at("drop"));
  t.item = j.at("item").get<std::string>();
  t.source_text = j.value("source_text", "");
  t.pickup_zone = j.value("pickup_zone", "");
  t.drop_zone = j.value("drop_zone", "");
  return t;
}

Json sites_json(std::span<const Site> sites) {
  Json arr = Json::array();
  for (const Site& s : sites) arr.push_back({{"id", index_of(s.id)}, {"position", to_json(s.position)}});
  return arr;
}

std::vector<Site> sites_from(const Json& j) {
  std::vector<Site> out;
  for (const Json& s : j) out.push_back({id_from(s.at("id")), point_from(s.at("position"))});
  return out;
}

MessageKind kind_from(const std::string& s) {
  if (s == "HandoffReady") return MessageKind::HandoffReady;
  if (s == "HandoffAck") return MessageKind::HandoffAck;
  if (s == "TaskComplete") return MessageKind::TaskComplete;
  throw std::invalid_argument("unknown message kind " + s);
}

StatusLed led_from(const std::string& s) {
  if (s == "off") return StatusLed::Off;
  if (s == "green") return StatusLed::Green;
  if (s == "blue") return StatusLed::Blue;
  throw std::invalid_argument("unknown status_led " + s);
}

// Runs a parser body, translating JSON / argument failures into `code`.
template <typename F>
auto guarded(Errc code, std::string_view what, F&& body) {
  try {
    return body();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(code, std::string(what) + ": " + e.what());
  }
}

}  // namespace

SemanticMap map_from_json(std::string_view text) {
  return guarded(Errc::InvalidMap, "semantic map", [&] {
    const Json j = Json::parse(text);
    SemanticMap map(workspace_from(j.at("workspace")));
    for (const auto& [name, anchor] : j.at("zones").items()) map.add_zone(name, point_from(anchor));
    return map;
  });
}

std::string map_to_json(const SemanticMap& map) {
  Json j;
  Json zones = Json::object();
  for (const auto& [key, zone] : map.zones()) zones[zone.name] = to_json(zone.anchor);
  j["zones"] = std::move(zones);
  j["workspace"] = workspace_json(map.workspace());
  return j.dump(2);
}

std::vector<GridCell> occupancy_from_json(std::string_view text) {
  return guarded(Errc::InvalidMap, "occupancy", [&] {
    std::vector<GridCell> cells;
    for (const Json& c : Json::parse(text)) cells.push_back(cell_from(c));
    return cells;
  });
}

std::string occupancy_to_json(std::span<const GridCell> cells) {
  Json arr = Json::array();
  for (GridCell c : cells) arr.push_back(to_json(c));
  return arr.dump();
}

std::vector<SharedEdge> all_shared_edges(const VoronoiDiagram& diagram) {
  std::vector<SharedEdge> edges;
  for (std::size_t a = 0; a < diagram.cells.size(); ++a) {
    for (std::size_t b = a + 1; b < diagram.cells.size(); ++b) {
      if (auto e = shared_edge(diagram, diagram.cells[a].site_id, diagram.cells[b].site_id)) {
        edges.push_back(*e);
      }
    }
  }
  return edges;
}

std::string diagram_to_json(const VoronoiDiagram& diagram) {
  Json j;
  j["workspace"] = workspace_json(diagram.workspace);
  Json cells = Json::array();
  for (const VoronoiCell& c : diagram.cells) {
    Json verts = Json::array();
    for (Point v : c.vertices) verts.push_back(to_json(v));
    cells.push_back({{"id", index_of(c.site_id)}, {"site", to_json(c.site)}, {"vertices", std::move(verts)}});
  }
  j["cells"] = std::move(cells);
  Json edges = Json::array();
  for (const SharedEdge& e : all_shared_edges(diagram)) {
    edges.push_back({{"a", index_of(e.site_a)}, {"b", index_of(e.site_b)}, {"p1", to_json(e.p1)},
                     {"p2", to_json(e.p2)}});
  }
  j["edges"] = std::move(edges);
  return j.dump(2);
}

VoronoiDiagram diagram_from_json(std::string_view text) {
  return guarded(Errc::InvalidPlan, "diagram", [&] {
    const Json j = Json::parse(text);
    VoronoiDiagram d;
    d.workspace = workspace_from(j.at("workspace"));
    for (const Json& c : j.at("cells")) {
      VoronoiCell cell{id_from(c.at("id")), point_from(c.at("site")), {}};
      for (const Json& v : c.at("vertices")) cell.vertices.push_back(point_from(v));
      d.cells.push_back(std::move(cell));
    }
    std::sort(d.cells.begin(), d.cells.end(),
              [](const VoronoiCell& a, const VoronoiCell& b) { return a.site_id < b.site_id; });
    return d;
  });
}

std::string plan_to_json(const RelayPlan& plan) {
  Json j;
  j["task"] = task_json(plan.task);
  j["robots"] = sites_json(plan.robots);
  Json active = Json::array();
  for (RobotId id : plan.active) active.push_back(index_of(id));
  j["active"] = std::move(active);
  Json transfers = Json::array();
  for (Point z : plan.transfers) transfers.push_back(to_json(z));
  j["transfers"] = std::move(transfers);
  j["transfer_on_edge"] = plan.transfer_on_edge;
  Json segments = Json::array();
  for (const Segment& s : plan.segments) {
    Json wps = Json::array();
    for (Point p : s.waypoints) wps.push_back(to_json(p));
    segments.push_back({{"robot", index_of(s.robot)}, {"waypoints", std::move(wps)}});
  }
  j["segments"] = std::move(segments);
  Json path = Json::array();
  for (GridCell c : plan.path.cells) path.push_back(to_json(c));
  j["path"] = std::move(path);
  j["baseline"] = plan.baseline;
  return j.dump(2);
}

std::vector<std::string> validate_plan_json(std::string_view text) {
  std::vector<std::string> problems;
  const Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return {"document is not a JSON object"};

  auto is_point = [](const Json& p) {
    return p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number();
  };
  auto require = [&](const char* key, auto&& check, const char* expect) {
    if (!j.contains(key)) {
      problems.push_back(std::string("missing '") + key + "'");
    } else if (!check(j[key])) {
      problems.push_back(std::string("'") + key + "' must be " + expect);
    }
  };
  auto array_of = [](auto&& pred) {
    return [pred](const Json& a) { return a.is_array() && std::all_of(a.begin(), a.end(), pred); };
  };

  require("task", [&](const Json& t) {
    return t.is_object() && t.contains("pickup") && is_point(t["pickup"]) && t.contains("drop") &&
           is_point(t["drop"]) && t.contains("item") && t["item"].is_string();
  }, "an object with pickup, drop and item");
  require("active", array_of([](const Json& x) { return x.is_number_unsigned(); }), "an array of robot ids");
  require("transfers", array_of(is_point), "an array of [x, y] points");
  require("segments", array_of([&](const Json& s) {
    return s.is_object() && s.contains("robot") && s["robot"].is_number_unsigned() && s.contains("waypoints") &&
           s["waypoints"].is_array() && std::all_of(s["waypoints"].begin(), s["waypoints"].end(), is_point);
  }), "an array of {robot, waypoints}");
  require("baseline", [](const Json& b) { return b.is_boolean(); }, "a boolean");
  if (!problems.empty()) return problems;

  if (j["transfers"].size() + 1 != j["active"].size()) {
    problems.emplace_back("transfers must number one fewer than active robots");
  }
  if (j["segments"].size() != j["active"].size()) {
    problems.emplace_back("one segment per active robot is required");
  } else {
    for (std::size_t k = 0; k < j["segments"].size(); ++k) {
      if (j["segments"][k]["robot"] != j["active"][k]) {
        problems.push_back("segment " + std::to_string(k) + " belongs to the wrong robot");
      }
    }
  }
  return problems;
}

RelayPlan plan_from_json(std::string_view text) {
  if (auto problems = validate_plan_json(text); !problems.empty()) {
    throw Error(Errc::InvalidPlan, problems.front());
  }
  return guarded(Errc::InvalidPlan, "plan", [&] {
    const Json j = Json::parse(text);
    RelayPlan plan;
    plan.task = task_from(j.at("task"));
    if (j.contains("robots")) plan.robots = sites_from(j["robots"]);
    for (const Json& id : j.at("active")) plan.active.push_back(id_from(id));
    for (const Json& z : j.at("transfers")) plan.transfers.push_back(point_from(z));
    if (j.contains("transfer_on_edge")) {
      for (const Json& b : j["transfer_on_edge"]) plan.transfer_on_edge.push_back(b.get<bool>());
    } else {
      plan.transfer_on_edge.assign(plan.transfers.size(), true);
    }
    for (const Json& s : j.at("segments")) {
      Segment seg{id_from(s.at("robot")), {}};
      for (const Json& p : s.at("waypoints")) seg.waypoints.push_back(point_from(p));
      plan.segments.push_back(std::move(seg));
    }
    if (j.contains("path")) {
      for (const Json& c : j["path"]) plan.path.cells.push_back(cell_from(c));
    }
    plan.baseline = j.at("baseline").get<bool>();
    return plan;
  });
}

std::string message_to_json(const HandoffMessage& m) {
  Json j;
  j["tick"] = m.tick;
  j["kind"] = std::string(to_string(m.kind));
  j["task_id"] = m.task_id;
  j["from"] = to_json(m.from);
  j["to"] = to_json(m.to);
  j["at"] = to_json(m.at);
  j["status_led"] = std::string(to_string(m.status_led));
  return j.dump();
}

HandoffMessage message_from_json(std::string_view line) {
  return guarded(Errc::InvalidPlan, "message", [&] {
    const Json j = Json::parse(line);
    return HandoffMessage{kind_from(j.at("kind").get<std::string>()), j.at("task_id").get<int>(),
                          id_from(j.at("from")), id_from(j.at("to")), point_from(j.at("at")),
                          j.at("tick").get<int>(), led_from(j.at("status_led").get<std::string>())};
  });
}

std::string trial_record_to_json(const TrialRecord& r) {
  Json j;
  j["trial_id"] = r.trial_id;
  j["team_size"] = r.team_size;
  j["seed"] = r.seed;
  j["task"] = task_json(r.task);
  j["active_count"] = r.active_count;
  Json per_agent = Json::object();
  for (const auto& [id, moves] : r.per_agent_moves) per_agent[std::to_string(index_of(id))] = moves;
  j["per_agent_moves"] = std::move(per_agent);
  j["total_moves"] = r.total_moves;
  j["baseline_total_moves"] = r.baseline_total_moves;
  j["baseline_completed"] = r.baseline_completed;
  j["ticks"] = r.ticks;
  j["completed"] = r.completed;
  j["transfers"] = r.transfers;
  j["handoffs"] = r.handoffs;
  if (!r.error.empty()) j["error"] = r.error;
  return j.dump();
}

TrialRecord trial_record_from_json(std::string_view line) {
  return guarded(Errc::InvalidConfig, "trial record", [&] {
    const Json j = Json::parse(line);
    TrialRecord r;
    r.trial_id = j.at("trial_id").get<int>();
    r.team_size = j.at("team_size").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.task = task_from(j.at("task"));
    r.active_count = j.at("active_count").get<int>();
    for (const auto& [id, moves] : j.at("per_agent_moves").items()) {
      r.per_agent_moves[RobotId{static_cast<std::uint32_t>(std::stoul(id))}] = moves.get<int>();
    }
    r.total_moves = j.at("total_moves").get<int>();
    r.baseline_total_moves = j.at("baseline_total_moves").get<int>();
    r.baseline_completed = j.at("baseline_completed").get<bool>();
    r.ticks = j.at("ticks").get<int>();
    r.completed = j.at("completed").get<bool>();
    r.transfers = j.at("transfers").get<int>();
    r.handoffs = j.at("handoffs").get<int>();
    r.error = j.value("error", "");
    return r;
  });
}

std::string config_to_json(const SimConfig& c) {
  Json j;
  j["grid"] = {{"cols", c.grid_cols}, {"rows", c.grid_rows}};
  j["team_sizes"] = c.team_sizes;
  j["trials_per_size"] = c.trials_per_size;
  j["min_task_separation"] = c.min_task_separation;
  j["seed"] = c.seed;
  j["message_delay"] = c.message_delay;
  if (c.tick_budget) j["tick_budget"] = *c.tick_budget;
  return j.dump(2);
}

SimConfig config_from_json(std::string_view text) {
  return guarded(Errc::InvalidConfig, "config", [&] {
    const Json j = Json::parse(text);
    SimConfig c;
    if (j.contains("grid")) {
      c.grid_cols = j["grid"].value("cols", c.grid_cols);
      c.grid_rows = j["grid"].value("rows", c.grid_rows);
    }
    if (j.contains("team_sizes")) c.team_sizes = j["team_sizes"].get<std::vector<int>>();
    c.trials_per_size = j.value("trials_per_size", c.trials_per_size);
    c.min_task_separation = j.value("min_task_separation", c.min_task_separation);
    c.seed = j.value("seed", c.seed);
    c.message_delay = j.value("message_delay", c.message_delay);
    if (j.contains("tick_budget")) c.tick_budget = j["tick_budget"].get<int>();
    c.validate();
    return c;
  });
}

std::string summary_to_csv(const BatchSummary& summary) {
  std::string out = "team_size,mean_total,std_total,mean_per_agent,mean_active,reduction\n";
  char line[256];
  for (const TeamSummary& r : summary.rows) {
    std::snprintf(line, sizeof line, "%d,%.6f,%.6f,%.6f,%.6f,%.6f\n", r.team_size, r.mean_total, r.std_total,
                  r.mean_per_agent, r.mean_active, r.reduction);
    out += line;
  }
  return out;
}

}  // namespace deliver
