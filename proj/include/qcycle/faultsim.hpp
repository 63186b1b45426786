#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qcycle/cyclerouter.hpp"
#include "qcycle/lighttrail.hpp"
#include "qcycle/netgraph.hpp"
#include "qcycle/quorum.hpp"

namespace qcycle {

// Per-failed-edge missing ordered pairs. A pair (s,d) is missing for edge
// e iff no trail of any cycle in the solution carries s to d with e cut.
struct FaultReport {
  TrailConfig config = TrailConfig::paired;
  int n = 0;
  int total_pairs = 0;                                   // n*(n-1)
  std::vector<Edge> edges;                               // network edge order
  std::vector<std::vector<std::pair<int, int>>> missing; // per edge, sorted

  long total_missing() const;
  double mean_missing() const;
  int max_missing() const;
  int min_missing() const;
};

// Simulates the failure of every network edge. hub_offset rotates every
// cycle's hub position (0 = the walk start).
FaultReport simulate(const Network& net, const RoutingSolution& sol,
                     TrailConfig config, int hub_offset = 0);

// Missing pairs for one fault; the edge must belong to the network.
std::vector<std::pair<int, int>> missing_pairs_for_edge(
    const Network& net, const RoutingSolution& sol, TrailConfig config,
    int hub_offset, Edge failed);

// 100 * (1 - mean missing per edge / total pairs).
double coverage(const FaultReport& report);

struct HubSweepEntry {
  int offset = 0;
  double mean_missing = 0.0;
  double coverage_pct = 0.0;
};

struct HubSweepResult {
  std::vector<HubSweepEntry> entries;
  int best_offset = 0;   // lowest mean missing
  int worst_offset = 0;  // highest mean missing
};

// Evaluates every hub rotation offset to bound hub-placement sensitivity.
HubSweepResult sweep_hubs(const Network& net, const RoutingSolution& sol,
                          TrailConfig config);

struct ExperimentStats {
  long samples = 0;
  long failed_samples = 0;
  long observations = 0;  // usable samples x edges
  int total_pairs = 0;
  double mean_missing = 0.0;
  double ci95_halfwidth = 0.0;
  int high = 0;
  int low = 0;
  double coverage_pct = 0.0;
};

// Renumbers, routes, and simulates `samples` independent labelings. The
// observation unit is one (sample, edge) missing count. Sample i uses
// permutation seed (seed + i); seed 0 therefore starts from the identity
// labeling. Deterministic regardless of worker count.
ExperimentStats batch_experiment(const Network& net, const QuorumSet& qs,
                                 int samples, std::uint64_t seed,
                                 TrailConfig config, int workers = 1);

ExperimentStats stats_from_report(const FaultReport& report);

extern const char* const kStatsCsvHeader;
std::string stats_csv_row(const std::string& network, int nodes,
                          const ExperimentStats& st);
std::string stats_json(const std::string& network, int nodes,
                       const ExperimentStats& st);
void write_fault_report_csv(const FaultReport& report, std::ostream& out);

const char* trail_config_name(TrailConfig config);
TrailConfig trail_config_from_name(const std::string& name);

}  // namespace qcycle
