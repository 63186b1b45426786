#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "qcycle/cyclerouter.hpp"
#include "qcycle/faultsim.hpp"

namespace qcycle {

namespace {

struct Tuple {
  Edge edge;
  int s = 0, d = 0;
};

std::vector<Tuple> flatten(const FaultReport& report) {
  std::vector<Tuple> tuples;
  for (std::size_t i = 0; i < report.edges.size(); ++i) {
    for (auto [s, d] : report.missing[i]) {
      tuples.push_back({report.edges[i], s, d});
    }
  }
  std::sort(tuples.begin(), tuples.end(), [](const Tuple& a, const Tuple& b) {
    return std::tie(a.edge, a.s, a.d) < std::tie(b.edge, b.s, b.d);
  });
  return tuples;
}

std::set<Edge> cycle_edges(const Cycle& c) {
  std::set<Edge> edges;
  for (int i = 0; i < c.length(); ++i) {
    edges.insert(make_edge(c.walk[i], c.walk[(i + 1) % c.length()]));
  }
  return edges;
}

bool pair_served(const RoutingSolution& sol, TrailConfig config, Edge failed,
                 int s, int d) {
  for (const auto& cycle : sol.cycles) {
    TrailSet ts = config == TrailConfig::paired ? build_paired(cycle, 0)
                                                : build_quad(cycle, 0);
    if (reachable(ts, failed, s, d)) return true;
  }
  return false;
}

// Responsible cycle: contains both endpoints of the pair and uses the
// failed edge between their walk positions; ties and fallbacks resolve to
// the lowest quorum index.
int responsible_cycle(const RoutingSolution& sol, Edge failed, int s, int d) {
  int fallback = -1;
  for (std::size_t ci = 0; ci < sol.cycles.size(); ++ci) {
    const auto& walk = sol.cycles[ci].walk;
    const int len = static_cast<int>(walk.size());
    std::vector<int> pos_s, pos_d;
    int edge_pos = -1;
    for (int i = 0; i < len; ++i) {
      if (walk[i] == s) pos_s.push_back(i);
      if (walk[i] == d) pos_d.push_back(i);
      if (make_edge(walk[i], walk[(i + 1) % len]) == failed) edge_pos = i;
    }
    if (pos_s.empty() || pos_d.empty() || edge_pos < 0) continue;
    if (fallback < 0) fallback = static_cast<int>(ci);
    for (int i : pos_s) {
      for (int j : pos_d) {
        if (std::min(i, j) <= edge_pos && edge_pos < std::max(i, j)) {
          return static_cast<int>(ci);
        }
      }
    }
  }
  return fallback;
}

// Shortest path between the cut endpoints avoiding the failed edge and the
// cycle's surviving edges; empty if none exists.
std::vector<int> reclose(const Network& net, const Cycle& cycle, Edge failed) {
  const auto& walk = cycle.walk;
  const int len = static_cast<int>(walk.size());
  int cut = -1;
  for (int i = 0; i < len; ++i) {
    if (make_edge(walk[i], walk[(i + 1) % len]) == failed) {
      cut = i;
      break;
    }
  }
  if (cut < 0) return {};

  std::set<Edge> banned = cycle_edges(cycle);  // includes the failed edge
  const int a = walk[cut];
  const int b = walk[(cut + 1) % len];

  // BFS from b toward a, then greedy lowest-id walk from a.
  std::vector<int> dist(net.n() + 1, -1);
  std::deque<int> q{b};
  dist[b] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : net.neighbors(u)) {
      if (banned.count(make_edge(u, v))) continue;
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  if (dist[a] < 0) return {};
  std::vector<int> path{a};
  int cur = a;
  while (cur != b) {
    for (int v : net.neighbors(cur)) {
      if (banned.count(make_edge(cur, v))) continue;
      if (dist[v] == dist[cur] - 1) {
        path.push_back(v);
        cur = v;
        break;
      }
    }
  }

  // New walk: the surviving arc from b around to a, then the detour's
  // interior a -> ... -> b (closure back to b implied).
  std::vector<int> next;
  for (int i = 0; i < len; ++i) next.push_back(walk[(cut + 1 + i) % len]);
  for (std::size_t i = 1; i + 1 < path.size(); ++i) next.push_back(path[i]);
  // Rotate back to the original start node so the hub position (walk
  // start) survives the reroute; otherwise fixing one fault reshuffles
  // every trail on the cycle.
  for (std::size_t i = 0; i < next.size(); ++i) {
    if (next[i] == walk.front()) {
      std::rotate(next.begin(), next.begin() + i, next.end());
      break;
    }
  }
  return next;
}

}  // namespace

RepairOutcome repair_missing_pairs(const Network& net,
                                   const RoutingSolution& sol,
                                   const FaultReport& report, int max_rounds) {
  RepairOutcome outcome;
  outcome.solution = sol;
  outcome.before_total = report.total_missing();
  outcome.before_mean = report.mean_missing();

  const TrailConfig config = report.config;
  FaultReport current = report;
  std::set<std::tuple<int, int, int, int>> recorded;

  for (int round = 0; round < max_rounds; ++round) {
    std::vector<Tuple> tuples = flatten(current);
    if (tuples.empty()) break;

    bool changed = false;
    for (const Tuple& t : tuples) {
      if (pair_served(outcome.solution, config, t.edge, t.s, t.d)) continue;
      const int ci = responsible_cycle(outcome.solution, t.edge, t.s, t.d);
      auto key = std::make_tuple(t.edge.first, t.edge.second, t.s, t.d);
      if (ci < 0) {
        if (recorded.insert(key).second) {
          outcome.unrepairable.push_back(
              {t.s, t.d, t.edge, "no cycle carries both endpoints across the fault"});
        }
        continue;
      }
      std::vector<int> new_walk = reclose(net, outcome.solution.cycles[ci], t.edge);
      if (new_walk.empty()) {
        if (recorded.insert(key).second) {
          outcome.unrepairable.push_back(
              {t.s, t.d, t.edge,
               "cycle " + std::to_string(ci + 1) +
                   " has no alternative closing path around the fault"});
        }
        continue;
      }
      Cycle repaired = outcome.solution.cycles[ci];
      repaired.walk = std::move(new_walk);
      auto problems = validate_cycle(net, repaired);
      if (!problems.empty()) {
        throw std::runtime_error("repair produced an invalid cycle: " +
                                 problems.front());
      }

      // A reroute can open new gaps elsewhere; keep it only if the total
      // strictly drops. Rejections are remembered so the round can still
      // reach a fixpoint.
      RoutingSolution candidate = outcome.solution;
      candidate.cycles[ci] = std::move(repaired);
      FaultReport next = simulate(net, candidate, config, 0);
      if (next.total_missing() < current.total_missing()) {
        outcome.solution = std::move(candidate);
        current = std::move(next);
        changed = true;
      } else if (recorded.insert(key).second) {
        outcome.unrepairable.push_back(
            {t.s, t.d, t.edge,
             "re-closing cycle " + std::to_string(ci + 1) +
                 " would add as many missing pairs as it removes"});
      }
    }

    outcome.rounds = round + 1;
    if (!changed) break;
    if (current.total_missing() == 0) break;
  }

  outcome.after_total = current.total_missing();
  outcome.after_mean = current.mean_missing();
  return outcome;
}

}  // namespace qcycle
