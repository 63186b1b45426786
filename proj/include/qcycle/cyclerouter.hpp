#pragma once

#include <string>
#include <vector>

#include "qcycle/cycle.hpp"
#include "qcycle/lighttrail.hpp"
#include "qcycle/netgraph.hpp"
#include "qcycle/quorum.hpp"

namespace qcycle {

struct RoutingSolution {
  std::string network_name;
  int n = 0;
  std::vector<Cycle> cycles;  // one per quorum, quorum order

  int total_links() const;
  double average_length() const;
};

// Independent check of the cycle invariants: consecutive entries
// (including the wrap) are network edges, no edge repeats, every quorum
// node is on the walk. Empty result means valid.
std::vector<std::string> validate_cycle(const Network& net, const Cycle& cycle);

// Three-phase heuristic for a short closed walk through `required`:
// scored shortest paths between required nodes, an edge-disjoint closing
// path, then cheapest edge-removal/path-splice insertion of each missing
// node. Deterministic for fixed inputs.
Cycle find_cycle(const Network& net, const std::vector<int>& required);

// One find_cycle per quorum. Cycles for distinct quorums are independent;
// workers > 1 parallelizes without changing the result.
RoutingSolution route_all(const Network& net, const QuorumSet& qs,
                          int workers = 1);

// Transmitter (= receiver) count per node id: walk occurrences across all
// cycles times the number of trail pairs per cycle. Index 0 unused.
std::vector<int> resource_counts(const RoutingSolution& sol, TrailConfig config);

// Lightpath full-mesh comparison baseline: n-1 transceivers per node.
int full_mesh_transceivers(int n);

std::string solution_to_json(const RoutingSolution& sol);
RoutingSolution solution_from_json(const std::string& text);
void save_solution(const RoutingSolution& sol, const std::string& path);
// Loads and validates every cycle against the network.
RoutingSolution load_solution(const std::string& path, const Network& net);

struct FaultReport;  // faultsim.hpp

struct UnrepairableTuple {
  int s = 0, d = 0;
  Edge edge;
  std::string reason;
};

struct RepairOutcome {
  RoutingSolution solution;
  int rounds = 0;
  long before_total = 0;
  long after_total = 0;
  double before_mean = 0.0;
  double after_mean = 0.0;
  std::vector<UnrepairableTuple> unrepairable;
};

// For each missing-pair tuple, re-closes the responsible cycle around the
// faulty edge, re-simulates, and repeats to a fixpoint or the round cap.
// The accepted solution never has more total missing pairs than the
// input.
RepairOutcome repair_missing_pairs(const Network& net,
                                   const RoutingSolution& sol,
                                   const FaultReport& report,
                                   int max_rounds = 10);

}  // namespace qcycle
