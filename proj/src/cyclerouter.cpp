#include "qcycle/cyclerouter.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

namespace qcycle {

int RoutingSolution::total_links() const {
  int total = 0;
  for (const auto& c : cycles) total += c.length();
  return total;
}

double RoutingSolution::average_length() const {
  return cycles.empty() ? 0.0
                        : static_cast<double>(total_links()) / cycles.size();
}

std::vector<std::string> validate_cycle(const Network& net, const Cycle& cycle) {
  std::vector<std::string> problems;
  const auto& walk = cycle.walk;
  if (walk.size() < 3) {
    problems.push_back("walk has fewer than 3 nodes");
    return problems;
  }
  std::set<Edge> used;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const int u = walk[i];
    const int v = walk[(i + 1) % walk.size()];
    if (u < 1 || u > net.n()) {
      problems.push_back("node " + std::to_string(u) + " out of range");
      continue;
    }
    if (!net.has_edge(u, v)) {
      problems.push_back("(" + std::to_string(u) + "," + std::to_string(v) +
                         ") is not a network edge");
      continue;
    }
    if (!used.insert(make_edge(u, v)).second) {
      problems.push_back("edge (" + std::to_string(u) + "," +
                         std::to_string(v) + ") traversed twice");
    }
  }
  for (int r : cycle.quorum) {
    if (std::find(walk.begin(), walk.end(), r) == walk.end()) {
      problems.push_back("quorum node " + std::to_string(r) +
                         " missing from walk");
    }
  }
  return problems;
}

namespace {

using EdgeSet = std::set<Edge>;

std::vector<int> bfs_dist(const Network& net, int src, const EdgeSet& banned) {
  std::vector<int> dist(net.n() + 1, -1);
  std::deque<int> q{src};
  dist[src] = 0;
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
  return dist;
}

// Lexicographically smallest shortest path avoiding banned edges, or
// empty if unreachable. Greedy walk over a reverse BFS distance field.
std::vector<int> lex_shortest_path(const Network& net, int from, int to,
                                   const EdgeSet& banned) {
  std::vector<int> dist_to = bfs_dist(net, to, banned);
  if (dist_to[from] < 0) return {};
  std::vector<int> path{from};
  int cur = from;
  while (cur != to) {
    int next = -1;
    for (int v : net.neighbors(cur)) {  // neighbors sorted ascending
      if (banned.count(make_edge(cur, v))) continue;
      if (dist_to[v] == dist_to[cur] - 1) {
        next = v;
        break;
      }
    }
    path.push_back(next);
    cur = next;
  }
  return path;
}

// Best shortest path from src to each node: among all shortest paths,
// maximize required nodes on the path, then required 2-degree nodes, then
// take the lexicographically smallest node sequence.
struct ScoredPaths {
  std::vector<int> dist;
  std::vector<int> req_count;
  std::vector<int> twodeg_count;
  std::vector<std::vector<int>> path;
};

ScoredPaths scored_shortest_paths(const Network& net, int src,
                                  const std::vector<char>& is_required) {
  const int n = net.n();
  ScoredPaths sp;
  sp.dist = bfs_dist(net, src, {});
  sp.req_count.assign(n + 1, 0);
  sp.twodeg_count.assign(n + 1, 0);
  sp.path.assign(n + 1, {});

  std::vector<int> order;
  for (int u = 1; u <= n; ++u) {
    if (sp.dist[u] >= 0) order.push_back(u);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return sp.dist[a] != sp.dist[b] ? sp.dist[a] < sp.dist[b] : a < b;
  });

  for (int u : order) {
    if (u == src) {
      sp.req_count[u] = is_required[u] ? 1 : 0;
      sp.twodeg_count[u] = is_required[u] && net.degree(u) == 2 ? 1 : 0;
      sp.path[u] = {src};
      continue;
    }
    int best = -1;
    for (int p : net.neighbors(u)) {
      if (sp.dist[p] != sp.dist[u] - 1 || sp.path[p].empty()) continue;
      if (best < 0 ||
          std::tuple(-sp.req_count[p], -sp.twodeg_count[p], sp.path[p]) <
              std::tuple(-sp.req_count[best], -sp.twodeg_count[best],
                         sp.path[best])) {
        best = p;
      }
    }
    if (best < 0) continue;  // unreachable under current frontier
    sp.req_count[u] = sp.req_count[best] + (is_required[u] ? 1 : 0);
    sp.twodeg_count[u] =
        sp.twodeg_count[best] +
        (is_required[u] && net.degree(u) == 2 ? 1 : 0);
    sp.path[u] = sp.path[best];
    sp.path[u].push_back(u);
  }
  return sp;
}

EdgeSet walk_edges(const std::vector<int>& walk) {
  EdgeSet edges;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    edges.insert(make_edge(walk[i], walk[(i + 1) % walk.size()]));
  }
  return edges;
}

EdgeSet path_edges(const std::vector<int>& path) {
  EdgeSet edges;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    edges.insert(make_edge(path[i], path[i + 1]));
  }
  return edges;
}

// Minimum-total-length pair of mutually edge-disjoint paths from `mid` to
// `u` and to `w`, avoiding banned edges: unit-capacity min-cost flow of
// two units from mid to a virtual sink behind u and w. Undirected
// edge-disjointness follows from optimality (antiparallel flow would
// cancel at lower cost).
struct SplicePaths {
  bool feasible = false;
  int cost = 0;                // total edges in both paths
  std::vector<int> to_u, to_w; // node sequences starting at mid
};

SplicePaths two_disjoint_paths(const Network& net, const EdgeSet& banned,
                               int mid, int u, int w) {
  const int n = net.n();
  const int sink = 0;
  struct Arc {
    int to, cap, cost, flow = 0;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out(n + 1);
  auto add_arc = [&](int a, int b, int cap, int cost) {
    out[a].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({b, cap, cost});
    out[b].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({a, 0, -cost});
  };
  for (auto [a, b] : net.edges()) {
    if (banned.count({a, b})) continue;
    add_arc(a, b, 1, 1);
    add_arc(b, a, 1, 1);
  }
  add_arc(u, sink, 1, 0);
  add_arc(w, sink, 1, 0);

  SplicePaths result;
  const int INF = std::numeric_limits<int>::max() / 4;
  for (int round = 0; round < 2; ++round) {
    // Bellman-Ford over residual arcs (costs can be -1 on residuals).
    std::vector<int> dist(n + 1, INF), via(n + 1, -1);
    dist[mid] = 0;
    bool moved = true;
    while (moved) {
      moved = false;
      for (int a = 0; a <= n; ++a) {
        if (dist[a] >= INF) continue;
        for (int idx : out[a]) {
          const Arc& arc = arcs[idx];
          if (arc.flow >= arc.cap) continue;
          if (dist[a] + arc.cost < dist[arc.to]) {
            dist[arc.to] = dist[a] + arc.cost;
            via[arc.to] = idx;
            moved = true;
          }
        }
      }
    }
    if (dist[sink] >= INF) return result;  // fewer than 2 disjoint paths
    for (int v = sink; v != mid;) {
      arcs[via[v]].flow += 1;
      arcs[via[v] ^ 1].flow -= 1;
      v = arcs[via[v] ^ 1].to;
    }
    result.cost += dist[sink];
  }

  // Decompose: walk twice from mid along saturated arcs, consuming flow.
  for (int round = 0; round < 2; ++round) {
    std::vector<int> path{mid};
    int cur = mid;
    while (cur != sink) {
      int chosen = -1;
      for (int idx : out[cur]) {
        if ((idx & 1) == 0 && arcs[idx].flow > 0) {
          chosen = idx;
          break;
        }
      }
      if (chosen < 0) return result;  // broken conservation; treat as infeasible
      arcs[chosen].flow -= 1;
      cur = arcs[chosen].to;
      if (cur != sink) path.push_back(cur);
    }
    if (path.back() == u && result.to_u.empty()) {
      result.to_u = path;
    } else {
      result.to_w = path;
    }
  }
  if (result.to_u.empty() || result.to_w.empty()) {
    // Both flow paths ended at the same node; cannot happen with unit sink
    // arcs, but keep the guard.
    return result;
  }
  result.feasible = true;
  return result;
}

struct Splice {
  bool feasible = false;
  int cost = std::numeric_limits<int>::max();
  int pos = -1;  // walk edge index removed
  std::vector<int> to_u, to_w;
};

Splice best_splice(const Network& net, const std::vector<int>& walk, int node) {
  const EdgeSet banned = walk_edges(walk);
  Splice best;
  for (std::size_t pos = 0; pos < walk.size(); ++pos) {
    const int u = walk[pos];
    const int w = walk[(pos + 1) % walk.size()];
    SplicePaths sp = two_disjoint_paths(net, banned, node, u, w);
    if (!sp.feasible) continue;
    const int cost = sp.cost - 1;  // one cycle edge removed
    if (cost < best.cost) {
      best.feasible = true;
      best.cost = cost;
      best.pos = static_cast<int>(pos);
      best.to_u = sp.to_u;
      best.to_w = sp.to_w;
      if (best.cost <= 1) break;  // growth of one link cannot be beaten
    }
  }
  return best;
}

std::vector<int> apply_splice(const std::vector<int>& walk, const Splice& s) {
  std::vector<int> next(walk.begin(), walk.begin() + s.pos + 1);
  // u ... mid (reverse of mid->u, dropping u itself)
  for (auto it = s.to_u.rbegin() + 1; it != s.to_u.rend(); ++it) {
    next.push_back(*it);
  }
  // mid ... up to but excluding w
  for (std::size_t i = 1; i + 1 < s.to_w.size(); ++i) next.push_back(s.to_w[i]);
  for (std::size_t i = s.pos + 1; i < walk.size(); ++i) next.push_back(walk[i]);
  return next;
}

std::vector<int> missing_nodes(const std::vector<int>& walk,
                               const std::vector<int>& required) {
  std::vector<int> missing;
  for (int r : required) {
    if (std::find(walk.begin(), walk.end(), r) == walk.end()) {
      missing.push_back(r);
    }
  }
  std::sort(missing.begin(), missing.end());
  return missing;
}

// Shortest cycle through a single node: best closing path over each
// incident edge.
Cycle single_node_cycle(const Network& net, int node) {
  Cycle best;
  for (int nb : net.neighbors(node)) {
    std::vector<int> back = lex_shortest_path(net, nb, node, {make_edge(node, nb)});
    if (back.empty()) continue;
    std::vector<int> walk{node};
    walk.insert(walk.end(), back.begin(), back.end() - 1);
    if (best.walk.empty() || walk.size() < best.walk.size()) {
      best.walk = walk;
    }
  }
  if (best.walk.empty()) {
    throw std::runtime_error("node " + std::to_string(node) +
                             " lies on no cycle (all incident edges are bridges)");
  }
  return best;
}

std::string bridge_diagnostic(const Network& net) {
  auto findings = validate(net);
  if (!findings.connected) return "network is not connected";
  if (!findings.bridges.empty()) {
    auto [u, v] = findings.bridges.front();
    return "network is not 2-edge-connected; bridge (" + std::to_string(u) +
           "," + std::to_string(v) + ")";
  }
  return "no closing path found";
}

}  // namespace

Cycle find_cycle(const Network& net, const std::vector<int>& required) {
  if (required.empty()) {
    throw std::runtime_error("find_cycle: required node set is empty");
  }
  std::vector<char> is_required(net.n() + 1, 0);
  for (int r : required) {
    if (r < 1 || r > net.n()) {
      throw std::runtime_error("find_cycle: required node " +
                               std::to_string(r) + " out of range");
    }
    is_required[r] = 1;
  }
  std::vector<int> req(required);
  std::sort(req.begin(), req.end());
  req.erase(std::unique(req.begin(), req.end()), req.end());

  if (req.size() == 1) return single_node_cycle(net, req.front());

  // Evaluate the full pipeline from every ordered required pair's best
  // scored path and keep the shortest resulting cycle. Splicing only ever
  // grows a walk, so a candidate at or past the best length is abandoned.
  Cycle best;
  std::string failure;
  auto dominated = [&best](const std::vector<int>& walk) {
    return !best.walk.empty() && walk.size() >= best.walk.size();
  };
  for (int s : req) {
    ScoredPaths sp = scored_shortest_paths(net, s, is_required);
    for (int t : req) {
      if (t == s || sp.path[t].empty()) continue;

      const std::vector<int>& first_leg = sp.path[t];
      std::vector<int> back =
          lex_shortest_path(net, t, s, path_edges(first_leg));
      if (back.empty()) continue;

      std::vector<int> walk = first_leg;
      walk.insert(walk.end(), back.begin() + 1, back.end() - 1);
      if (dominated(walk)) continue;

      bool ok = true;
      for (std::vector<int> miss = missing_nodes(walk, req); !miss.empty();
           miss = missing_nodes(walk, req)) {
        Splice splice = best_splice(net, walk, miss.front());
        if (!splice.feasible) {
          if (failure.empty()) {
            failure = "cannot splice node " + std::to_string(miss.front()) +
                      " into any cycle edge (2-degree bottleneck)";
          }
          ok = false;
          break;
        }
        walk = apply_splice(walk, splice);
        if (dominated(walk)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;

      if (best.walk.empty() || walk.size() < best.walk.size()) {
        best.walk = std::move(walk);
      }
    }
  }
  if (best.walk.empty()) {
    throw std::runtime_error("find_cycle: " +
                             (failure.empty() ? bridge_diagnostic(net) : failure));
  }
  return best;
}

RoutingSolution route_all(const Network& net, const QuorumSet& qs, int workers) {
  if (net.n() != qs.n) {
    throw std::runtime_error("route_all: network has " +
                             std::to_string(net.n()) + " nodes but quorum set " +
                             std::to_string(qs.n));
  }
  RoutingSolution sol;
  sol.network_name = net.name();
  sol.n = net.n();
  sol.cycles.resize(qs.quorums.size());

  std::vector<std::string> errors(qs.quorums.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < qs.quorums.size();) {
      try {
        Cycle c = find_cycle(net, qs.quorums[i]);
        c.quorum = qs.quorums[i];
        c.quorum_id = static_cast<int>(i) + 1;
        sol.cycles[i] = std::move(c);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) {
      throw std::runtime_error("quorum " + std::to_string(i + 1) + ": " +
                               errors[i]);
    }
  }
  return sol;
}

std::vector<int> resource_counts(const RoutingSolution& sol, TrailConfig config) {
  std::vector<int> counts(sol.n + 1, 0);
  const int pairs_per_cycle = config == TrailConfig::paired ? 1 : 2;
  for (const auto& c : sol.cycles) {
    for (int node : c.walk) counts[node] += pairs_per_cycle;
  }
  return counts;
}

int full_mesh_transceivers(int n) { return n - 1; }

}  // namespace qcycle
