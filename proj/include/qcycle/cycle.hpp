#pragma once

#include <vector>

namespace qcycle {

// Closed walk in a network: consecutive entries are edges, the last entry
// closes back to the first (not stored twice), no edge is traversed more
// than once. Node ids may repeat.
struct Cycle {
  std::vector<int> walk;
  std::vector<int> quorum;  // node set this cycle serves, in shift order
  int quorum_id = 0;

  int length() const { return static_cast<int>(walk.size()); }
};

}  // namespace qcycle
