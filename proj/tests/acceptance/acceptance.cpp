// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "deliver/error.hpp"
#include "deliver/geometry.hpp"
#include "deliver/nlu.hpp"
#include "deliver/planning.hpp"
#include "deliver/simulation.hpp"
#include "oracles.hpp"

using namespace deliver;

namespace {

constexpr std::uint64_t kBatchSeed = 7;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome voronoi_locate() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> count(1, 12);
  std::uniform_real_distribution<double> coord(0.0, 20.0);
  const Workspace ws = unit_grid_workspace(20, 20);
  long samples = 0;
  long mismatches = 0;
  for (int config = 0; config < 100; ++config) {
    const auto sites = oracle::random_sites(rng, count(rng), 0.0, 20.0);
    const VoronoiDiagram d = compute_voronoi(sites, ws);
    for (int k = 0; k < 10000; ++k) {
      const Point p{coord(rng), coord(rng)};
      ++samples;
      if (locate(p, d) != oracle::nearest_site(sites, p)) ++mismatches;
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 10.0,
          fmt("%ld/%ld samples agree, %.2fs", samples - mismatches, samples, secs)};
}

Outcome relay_optimality() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2002);
  std::uniform_real_distribution<double> coord(0.0, 20.0);
  std::uniform_real_distribution<double> along(-15.0, 15.0);
  int on_bisector = 0;
  int worst_bisector = 0;
  double worst_gap = 0.0;
  double worst_equal = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Point a{coord(rng), coord(rng)};
    Point b{coord(rng), coord(rng)};
    while (distance(a, b) < 1e-3) b = {coord(rng), coord(rng)};
    SharedEdge edge{RobotId{0}, RobotId{1}, {}, {}};
    const bool bisector = k % 4 == 0;
    if (bisector) {
      const Point m = midpoint(a, b);
      const Point dir = (1.0 / distance(a, b)) * Point{-(b.y - a.y), b.x - a.x};
      double s1 = along(rng);
      double s2 = along(rng);
      while (std::abs(s1 - s2) < 1e-3) s2 = along(rng);
      edge.p1 = m + s1 * dir;
      edge.p2 = m + s2 * dir;
    } else {
      edge.p1 = {coord(rng), coord(rng)};
      edge.p2 = {coord(rng), coord(rng)};
    }
    const RelayPoint r = relay_point(a, b, edge);
    const double gap = std::abs(r.max_distance - oracle::minimax_on_segment(a, b, edge.p1, edge.p2));
    worst_gap = std::max(worst_gap, gap);
    if (bisector) {
      ++on_bisector;
      const double unequal = std::abs(distance(r.point, a) - distance(r.point, b));
      worst_equal = std::max(worst_equal, unequal);
      if (unequal > 1e-9) ++worst_bisector;
    }
  }
  const double secs = seconds_since(t0);
  return {worst_gap <= 1e-7 && worst_bisector == 0 && on_bisector >= 200 && secs < 5.0,
          fmt("1000 triples (%d on-bisector), max |minimax gap| %.2e, max bisector imbalance %.2e, %.2fs",
              on_bisector, worst_gap, worst_equal, secs)};
}

Outcome astar_optimality() {
  std::mt19937_64 rng(3003);
  int solvable = 0;
  int wrong = 0;
  for (int k = 0; k < 200; ++k) {
    std::vector<int> order(400);
    for (int i = 0; i < 400; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<bool>> blocked(20, std::vector<bool>(20, false));
    OccupancyGrid grid(unit_grid_workspace(20, 20));
    for (int i = 0; i < 80; ++i) {
      blocked[order[i] / 20][order[i] % 20] = true;
      grid.set_blocked(grid.cell_at(order[i]));
    }
    const GridCell s = grid.cell_at(order[80]);
    const GridCell g = grid.cell_at(order[81]);
    const auto expected = oracle::bfs_length(blocked, s, g);
    const auto got = find_path(grid, s, g);
    if (expected.has_value() != got.has_value()) {
      ++wrong;
      continue;
    }
    if (!expected) continue;
    ++solvable;
    if (got->length() != *expected) ++wrong;
  }
  return {wrong == 0 && solvable > 0, fmt("%d solvable of 200, %d disagreements with BFS", solvable, wrong)};
}

Outcome protocol_invariants() {
  const SimConfig config;
  const double diag = OccupancyGrid(config.workspace()).cell_diagonal();
  int trials = 0;
  int completed = 0;
  int possession_bad = 0;
  int locality_bad = 0;
  int count_bad = 0;
  for (int n : {1, 3, 5, 10}) {
    for (int t = 0; t < 75; ++t) {
      const std::uint64_t seed = trial_seed(4004, n, t);
      std::mt19937_64 rng(seed);
      const TrialSetup setup = generate_trial(n, config, rng);
      oracle::PossessionMonitor monitor;
      TrialOptions opts{t, seed, std::ref(monitor)};
      const TrialRun run = run_trial(setup.robots, setup.task, config, opts);
      ++trials;
      completed += run.record.completed ? 1 : 0;
      possession_bad += monitor.violations.empty() ? 0 : 1;
      locality_bad += oracle::handoffs_outside(run.messages, run.plan.active, run.plan.transfers, diag) > 0 ? 1 : 0;
      const int transfers = static_cast<int>(run.plan.transfers.size());
      if (oracle::count_kind(run.messages, MessageKind::HandoffReady) != transfers ||
          oracle::count_kind(run.messages, MessageKind::HandoffAck) != transfers) {
        ++count_bad;
      }
    }
  }
  return {trials == 300 && completed == trials && possession_bad == 0 && locality_bad == 0 && count_bad == 0,
          fmt("%d trials: completed %d, possession violations %d, off-point handoffs %d, count mismatches %d",
              trials, completed, possession_bad, locality_bad, count_bad)};
}

Outcome trend_reproduction() {
  const auto t0 = Clock::now();
  SimConfig config;
  config.seed = kBatchSeed;
  const BatchResult r = run_batch(config);
  const double secs = seconds_since(t0);

  double lo = 1e300;
  double hi = -1e300;
  double sum = 0.0;
  const TeamSummary* three = nullptr;
  const TeamSummary* ten = nullptr;
  for (const TeamSummary& row : r.summary.rows) {
    lo = std::min(lo, row.mean_total);
    hi = std::max(hi, row.mean_total);
    sum += row.mean_total;
    if (row.team_size == 3) three = &row;
    if (row.team_size == 10) ten = &row;
  }
  if (three == nullptr || ten == nullptr) return {false, "default batch lacks team sizes 3 and 10"};
  const double variation = (hi - lo) / (sum / static_cast<double>(r.summary.rows.size()));
  const double ratio = ten->mean_per_agent / ten->mean_baseline;
  const double growth = ten->mean_active / three->mean_active;
  const bool a = variation < 0.30;
  const bool b = ratio <= 0.60;
  const bool c = growth < 10.0 / 3.0;
  return {a && b && c && secs < 60.0,
          fmt("(a) total-moves spread %.3f [%s] (b) per-agent/baseline at n=10 %.3f [%s] "
              "(c) active(10)/active(3) %.3f [%s], %.2fs",
              variation, a ? "ok" : "fail", ratio, b ? "ok" : "fail", growth, c ? "ok" : "fail", secs)};
}

Outcome batch_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "deliver_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string csv[2];
  std::string jsonl[2];
  for (int k = 0; k < 2; ++k) {
    tools::BatchArgs args;
    args.seed = kBatchSeed;
    args.out = (dir / ("summary" + std::to_string(k) + ".csv")).string();
    args.records = (dir / ("trials" + std::to_string(k) + ".jsonl")).string();
    std::ostringstream table;
    tools::cmd_batch(args, table);
    csv[k] = tools::read_file(args.out);
    jsonl[k] = tools::read_file(args.records);
  }
  fs::remove_all(dir);
  const bool same = csv[0] == csv[1] && jsonl[0] == jsonl[1] && !csv[0].empty() && !jsonl[0].empty();
  return {same, fmt("CSV %zu bytes, JSONL %zu bytes, identical: %s", csv[0].size(), jsonl[0].size(),
                    same ? "yes" : "no")};
}

Outcome nlu_contract() {
  const SemanticMap map = default_home_map();
  const TaskSpec ref = parse_command("Bring me a glass of water from the kitchen to the bedroom.", map);
  bool ok = ref.pickup_zone == "kitchen" && ref.drop_zone == "bedroom" && ref.item == "glass of water" &&
            ref.pickup == resolve_zone("Kitchen", map) && ref.drop == resolve_zone("Bedroom", map);

  const char* variants[] = {
      "bring me a glass of water from the kitchen to the bedroom",
      "BRING ME A GLASS OF WATER FROM THE KITCHEN TO THE BEDROOM",
      "Bring me glass of water from kitchen to bedroom",
      "Bring a glass of water from the Kitchen to the Bedroom!",
      "Take a glass of water from the kitchen to the bedroom.",
      "Deliver a glass of water from the kitchen to the bedroom.",
      "Carry a glass of water from the kitchen to the bedroom.",
      "Move the glass of water from the kitchen to the bedroom.",
      "Please bring me a glass of water from the kitchen to the bedroom.",
      "Can you bring me a glass of water from the kitchen to the bedroom?",
      "Could you take a glass of water from the kitchen to the bedroom, please?",
      "Would you deliver the glass of water from the kitchen to the bedroom",
      "bring me an glass of water from the kitchen to the bedroom",
      "  Bring   me a glass of   water from the   kitchen to the bedroom  ",
      "bring us a glass of water from the kitchen to the bedroom",
      "Bring me the glass of water from a kitchen to a bedroom.",
      "take glass of water from KITCHEN to BEDROOM",
      "carry the Glass Of Water from the kitchen to the bedroom...",
      "Please, carry me a glass of water from the kitchen to the bedroom.",
      "deliver me a glass of water from the kitchen to the bedroom please",
  };
  int identical = 0;
  for (const char* v : variants) {
    try {
      const TaskSpec t = parse_command(v, map);
      if (t.pickup == ref.pickup && t.drop == ref.drop && t.item == ref.item && t.pickup_zone == ref.pickup_zone &&
          t.drop_zone == ref.drop_zone) {
        ++identical;
      }
    } catch (const Error&) {
    }
  }

  const std::pair<const char*, Errc> malformed[] = {
      {"", Errc::UnparsableCommand},
      {"dance from the kitchen to the bedroom", Errc::UnparsableCommand},
      {"bring me a glass of water to the bedroom", Errc::UnparsableCommand},
      {"bring me a glass of water from the kitchen", Errc::UnparsableCommand},
      {"bring me from the kitchen to the bedroom", Errc::UnparsableCommand},
      {"bring me a glass of water from the attic to the bedroom", Errc::UnknownZone},
      {"bring me a glass of water from the kitchen to the garage", Errc::UnknownZone},
      {"bring me a glass of water from the kitchen to the kitchen", Errc::SameZone},
  };
  int coded = 0;
  for (const auto& [text, expected] : malformed) {
    try {
      (void)parse_command(text, map);
    } catch (const Error& e) {
      coded += e.code() == expected ? 1 : 0;
    }
  }
  ok = ok && identical == 20 && coded == static_cast<int>(std::size(malformed));
  return {ok, fmt("reference command ok: %s, %d/20 variants identical, %d/%zu malformed inputs with expected code",
                  ref.item == "glass of water" ? "yes" : "no", identical, coded, std::size(malformed))};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 voronoi locate vs brute-force nearest site", voronoi_locate},
      {"2 relay point minimax vs ternary search", relay_optimality},
      {"3 a* path length vs bfs", astar_optimality},
      {"4 handoff protocol invariants over 300 trials", protocol_invariants},
      {"5 team-size trends on the default batch", trend_reproduction},
      {"6 batch output determinism", batch_determinism},
      {"7 command grammar contract", nlu_contract},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
