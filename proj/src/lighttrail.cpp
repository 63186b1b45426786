#include "qcycle/lighttrail.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qcycle {

namespace {

LightTrail forward_trail(const Cycle& cycle, int hub_pos) {
  const int len = cycle.length();
  LightTrail t;
  t.forward = true;
  t.order.reserve(len + 1);
  for (int i = 0; i <= len; ++i) t.order.push_back(cycle.walk[(hub_pos + i) % len]);
  return t;
}

}  // namespace

TrailSet build_paired(const Cycle& cycle, int hub_pos) {
  const int len = cycle.length();
  if (hub_pos < 0 || hub_pos >= len) {
    throw std::runtime_error("hub position " + std::to_string(hub_pos) +
                             " out of range for cycle of length " +
                             std::to_string(len));
  }
  TrailSet ts;
  ts.cycle = cycle;
  ts.config = TrailConfig::paired;
  ts.hub_positions = {hub_pos};
  LightTrail fwd = forward_trail(cycle, hub_pos);
  LightTrail rev;
  rev.forward = false;
  rev.order.assign(fwd.order.rbegin(), fwd.order.rend());
  ts.trails = {std::move(fwd), std::move(rev)};
  return ts;
}

TrailSet build_quad(const Cycle& cycle, int hub_pos) {
  const int len = cycle.length();
  if (len < 3) {
    throw std::runtime_error("quad trails need a cycle of length >= 3");
  }
  TrailSet ts = build_paired(cycle, hub_pos);
  const int across = (hub_pos + len / 2) % len;
  TrailSet second = build_paired(cycle, across);
  ts.config = TrailConfig::quad;
  ts.hub_positions.push_back(across);
  ts.trails.insert(ts.trails.end(), second.trails.begin(), second.trails.end());
  return ts;
}

bool trail_reachable(const LightTrail& trail, const std::optional<Edge>& failed,
                     int u, int v) {
  const auto& ord = trail.order;
  const int m = static_cast<int>(ord.size()) - 1;  // edge count
  // Walk forward from each occurrence of u until a failed edge blocks.
  for (int i = 0; i < m; ++i) {
    if (ord[i] != u) continue;
    for (int j = i + 1; j <= m; ++j) {
      if (failed && make_edge(ord[j - 1], ord[j]) == *failed) break;
      if (ord[j] == v) return true;
    }
  }
  return false;
}

bool reachable(const TrailSet& ts, const std::optional<Edge>& failed, int u,
               int v) {
  if (u == v) throw std::runtime_error("reachable: u and v must differ");
  for (const auto& trail : ts.trails) {
    if (trail_reachable(trail, failed, u, v)) return true;
  }
  return false;
}

}  // namespace qcycle
