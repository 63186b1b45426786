#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qcycle {

// Undirected edge, stored with the smaller endpoint first.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Undirected simple graph with 1-based node ids. Immutable after
// construction; the constructor validates endpoints, rejects self-loops
// and duplicate edges.
class Network {
 public:
  Network(int n, std::vector<Edge> edges, std::string name = "");

  int n() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::string& name() const { return name_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int u) const;
  int degree(int u) const { return static_cast<int>(neighbors(u).size()); }
  bool has_edge(int u, int v) const;
  double mean_degree() const;

 private:
  int n_ = 0;
  std::string name_;
  std::vector<Edge> edges_;            // normalized, sorted
  std::vector<std::vector<int>> adj_;  // 1-based, sorted neighbor lists
};

// Text format: first non-comment line "n m", then m lines "u v".
// Lines starting with '#' are ignored.
Network load_network(const std::string& path);
void save_network(const Network& net, const std::string& path);

struct NetworkFindings {
  bool connected = false;
  bool two_edge_connected = false;
  int min_degree = 0;
  double mean_degree = 0.0;
  int degree2_nodes = 0;
  std::vector<Edge> bridges;
};

// Reports routing-relevant facts; findings, not failures.
NetworkFindings validate(const Network& net);

struct WaxmanConfig {
  int n = 0;
  double alpha = 0.4;  // edge-length sensitivity, > 0
  double beta = 0.5;   // density scale, (0, 1]
  double grid = 1.0;   // side length of the placement square
  std::uint64_t seed = 0;
  bool require_connected = true;
};

// beta * exp(-d / (alpha * L)) with L the grid diagonal.
double waxman_edge_probability(const WaxmanConfig& cfg, double distance);

// Nodes placed uniformly in the grid square, each pair joined with the
// Waxman probability. With require_connected, regenerates (advancing the
// PRNG) up to a retry cap.
Network waxman_generate(const WaxmanConfig& cfg);

enum class Density { sparse, medium, dense };
enum class EdgeLength { short_edges, long_edges };

// Target mean degrees: 2 (sparse), log2(n) (dense), midpoint (medium).
double density_target_degree(int n, Density d);

// Config with beta calibrated by binary search against the expected mean
// degree so generated graphs hit the density target.
WaxmanConfig waxman_preset(int n, Density density, EdgeLength length,
                           std::uint64_t seed, bool require_connected = true);

struct Renumbering {
  Network net;
  std::vector<int> perm;  // perm[old_id] = new_id; perm[0] unused
};

// Isomorphic copy under a uniformly random permutation. Seed 0 is the
// identity permutation by convention.
Renumbering renumber(const Network& net, std::uint64_t seed);

}  // namespace qcycle
