#pragma once

#include <optional>
#include <vector>

#include "qcycle/cycle.hpp"
#include "qcycle/netgraph.hpp"

namespace qcycle {

enum class TrailConfig { paired, quad };

// Unidirectional optical bus laid over a cycle. The hub occupies both
// endpoints with its shutter off, so signals never pass through it and
// the trail behaves as a line: a node reaches exactly the nodes after it
// in `order`.
struct LightTrail {
  std::vector<int> order;  // hub, ..., hub; size = cycle length + 1
  bool forward = true;

  int hub() const { return order.front(); }
};

struct TrailSet {
  Cycle cycle;
  TrailConfig config = TrailConfig::paired;
  std::vector<LightTrail> trails;  // 2 (paired) or 4 (quad)
  std::vector<int> hub_positions;  // walk positions, not node ids
};

// Two trails on the cycle, one per direction, hubbed at the given walk
// position.
TrailSet build_paired(const Cycle& cycle, int hub_pos);

// The paired trails plus a second pair hubbed floor(len/2) positions
// further along the walk.
TrailSet build_quad(const Cycle& cycle, int hub_pos);

// True iff some occurrence of u precedes some occurrence of v on the
// trail with every edge between them intact.
bool trail_reachable(const LightTrail& trail, const std::optional<Edge>& failed,
                     int u, int v);

// True iff any trail in the set carries u to v under the failed edge.
// Nodes not on the cycle are never reachable.
bool reachable(const TrailSet& ts, const std::optional<Edge>& failed, int u,
               int v);

}  // namespace qcycle
