#include "qcycle/faultsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace qcycle {

long FaultReport::total_missing() const {
  long total = 0;
  for (const auto& m : missing) total += static_cast<long>(m.size());
  return total;
}

double FaultReport::mean_missing() const {
  return missing.empty() ? 0.0
                         : static_cast<double>(total_missing()) / missing.size();
}

int FaultReport::max_missing() const {
  int high = 0;
  for (const auto& m : missing) high = std::max(high, static_cast<int>(m.size()));
  return high;
}

int FaultReport::min_missing() const {
  if (missing.empty()) return 0;
  int low = static_cast<int>(missing.front().size());
  for (const auto& m : missing) low = std::min(low, static_cast<int>(m.size()));
  return low;
}

namespace {

// Bitset over ordered node pairs; pair (s,d) maps to bit (s-1)*n + (d-1).
struct PairBits {
  int n = 0;
  std::vector<std::uint64_t> w;

  explicit PairBits(int n_) : n(n_), w((static_cast<std::size_t>(n_) * n_ + 63) / 64, 0) {}

  void set(int s, int d) {
    const std::size_t i = static_cast<std::size_t>(s - 1) * n + (d - 1);
    w[i >> 6] |= 1ull << (i & 63);
  }
  bool test(int s, int d) const {
    const std::size_t i = static_cast<std::size_t>(s - 1) * n + (d - 1);
    return (w[i >> 6] >> (i & 63)) & 1;
  }
  void or_with(const PairBits& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  }
};

// Adds every ordered pair realized by positions [from..to] of the trail.
void add_segment_pairs(PairBits& bits, const std::vector<int>& order, int from,
                       int to) {
  for (int i = from; i < to; ++i) {
    for (int j = i + 1; j <= to; ++j) {
      if (order[i] != order[j]) bits.set(order[i], order[j]);
    }
  }
}

// Precomputed reachability structure for one solution/config/hub choice.
// Every trail's full pair set is cached; a failed edge only forces
// segment recomputation on the trails that traverse it.
class ReachIndex {
 public:
  ReachIndex(const Network& net, const RoutingSolution& sol, TrailConfig config,
             int hub_offset)
      : net_(net), n_(net.n()) {
    for (const auto& cycle : sol.cycles) {
      const int len = cycle.length();
      const int hub = ((hub_offset % len) + len) % len;
      TrailSet ts = config == TrailConfig::paired ? build_paired(cycle, hub)
                                                  : build_quad(cycle, hub);
      for (auto& trail : ts.trails) {
        const int idx = static_cast<int>(orders_.size());
        PairBits full(n_);
        const int m = static_cast<int>(trail.order.size()) - 1;
        add_segment_pairs(full, trail.order, 0, m);
        for (int k = 0; k < m; ++k) {
          edge_pos_[key(make_edge(trail.order[k], trail.order[k + 1]))]
              .emplace_back(idx, k);
        }
        orders_.push_back(std::move(trail.order));
        full_.push_back(std::move(full));
      }
    }
  }

  std::vector<std::pair<int, int>> missing_for(Edge failed) const {
    if (!net_.has_edge(failed.first, failed.second)) {
      throw std::runtime_error("failed edge (" + std::to_string(failed.first) +
                               "," + std::to_string(failed.second) +
                               ") is not in the network");
    }
    PairBits reached(n_);
    std::vector<char> affected(orders_.size(), 0);
    auto it = edge_pos_.find(key(failed));
    if (it != edge_pos_.end()) {
      // Group blocked positions per trail, then add the unbroken segments.
      std::map<int, std::vector<int>> blocked;
      for (auto [trail, pos] : it->second) blocked[trail].push_back(pos);
      for (auto& [trail, positions] : blocked) {
        affected[trail] = 1;
        std::sort(positions.begin(), positions.end());
        PairBits bits(n_);
        const auto& order = orders_[trail];
        int start = 0;
        for (int cut : positions) {
          add_segment_pairs(bits, order, start, cut);
          start = cut + 1;
        }
        add_segment_pairs(bits, order, start,
                          static_cast<int>(order.size()) - 1);
        reached.or_with(bits);
      }
    }
    for (std::size_t t = 0; t < orders_.size(); ++t) {
      if (!affected[t]) reached.or_with(full_[t]);
    }

    std::vector<std::pair<int, int>> missing;
    for (int s = 1; s <= n_; ++s) {
      for (int d = 1; d <= n_; ++d) {
        if (s != d && !reached.test(s, d)) missing.emplace_back(s, d);
      }
    }
    return missing;
  }

 private:
  static long key(Edge e) { return static_cast<long>(e.first) * 100000 + e.second; }

  const Network& net_;
  int n_;
  std::vector<std::vector<int>> orders_;
  std::vector<PairBits> full_;
  std::map<long, std::vector<std::pair<int, int>>> edge_pos_;
};

void check_solution_matches(const Network& net, const RoutingSolution& sol) {
  if (sol.n != net.n()) {
    throw std::runtime_error("solution is for " + std::to_string(sol.n) +
                             " nodes but network has " +
                             std::to_string(net.n()));
  }
  for (const auto& c : sol.cycles) {
    auto problems = validate_cycle(net, c);
    if (!problems.empty()) {
      throw std::runtime_error("solution cycle " + std::to_string(c.quorum_id) +
                               " invalid on this network: " + problems.front());
    }
  }
}

}  // namespace

FaultReport simulate(const Network& net, const RoutingSolution& sol,
                     TrailConfig config, int hub_offset) {
  check_solution_matches(net, sol);
  ReachIndex index(net, sol, config, hub_offset);
  FaultReport report;
  report.config = config;
  report.n = net.n();
  report.total_pairs = net.n() * (net.n() - 1);
  report.edges = net.edges();
  report.missing.reserve(report.edges.size());
  for (Edge e : report.edges) report.missing.push_back(index.missing_for(e));
  return report;
}

std::vector<std::pair<int, int>> missing_pairs_for_edge(
    const Network& net, const RoutingSolution& sol, TrailConfig config,
    int hub_offset, Edge failed) {
  check_solution_matches(net, sol);
  ReachIndex index(net, sol, config, hub_offset);
  return index.missing_for(make_edge(failed.first, failed.second));
}

double coverage(const FaultReport& report) {
  if (report.edges.empty()) {
    throw std::runtime_error("coverage: empty fault report");
  }
  return 100.0 * (1.0 - report.mean_missing() / report.total_pairs);
}

HubSweepResult sweep_hubs(const Network& net, const RoutingSolution& sol,
                          TrailConfig config) {
  int longest = 0;
  for (const auto& c : sol.cycles) longest = std::max(longest, c.length());
  HubSweepResult result;
  for (int offset = 0; offset < longest; ++offset) {
    FaultReport rep = simulate(net, sol, config, offset);
    result.entries.push_back({offset, rep.mean_missing(), coverage(rep)});
  }
  auto best = std::min_element(result.entries.begin(), result.entries.end(),
                               [](const auto& a, const auto& b) {
                                 return a.mean_missing < b.mean_missing;
                               });
  auto worst = std::max_element(result.entries.begin(), result.entries.end(),
                                [](const auto& a, const auto& b) {
                                  return a.mean_missing < b.mean_missing;
                                });
  result.best_offset = best->offset;
  result.worst_offset = worst->offset;
  return result;
}

ExperimentStats batch_experiment(const Network& net, const QuorumSet& qs,
                                 int samples, std::uint64_t seed,
                                 TrailConfig config, int workers) {
  if (samples < 1) throw std::runtime_error("batch_experiment: samples >= 1");
  if (net.n() != qs.n) {
    throw std::runtime_error("batch_experiment: network/quorum size mismatch");
  }

  // One slot per sample: per-edge missing counts, or empty on failure.
  std::vector<std::vector<int>> counts(samples);
  std::vector<char> failed(samples, 0);
  std::atomic<int> cursor{0};
  auto work = [&]() {
    for (int i; (i = cursor.fetch_add(1)) < samples;) {
      const std::uint64_t sample_seed = seed + static_cast<std::uint64_t>(i);
      Renumbering rn = renumber(net, sample_seed);
      try {
        RoutingSolution sol = route_all(rn.net, qs);
        ReachIndex index(rn.net, sol, config, 0);
        std::vector<int> per_edge;
        per_edge.reserve(rn.net.edge_count());
        for (Edge e : rn.net.edges()) {
          per_edge.push_back(static_cast<int>(index.missing_for(e).size()));
        }
        counts[i] = std::move(per_edge);
      } catch (const std::exception&) {
        failed[i] = 1;
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

  ExperimentStats st;
  st.samples = samples;
  st.total_pairs = net.n() * (net.n() - 1);
  long long sum = 0, sum_sq = 0;
  long m = 0;
  int high = 0, low = std::numeric_limits<int>::max();
  for (int i = 0; i < samples; ++i) {
    if (failed[i]) {
      ++st.failed_samples;
      continue;
    }
    for (int c : counts[i]) {
      sum += c;
      sum_sq += static_cast<long long>(c) * c;
      high = std::max(high, c);
      low = std::min(low, c);
      ++m;
    }
  }
  if (m == 0) {
    throw std::runtime_error("batch_experiment: every sample failed to route");
  }
  st.observations = m;
  st.mean_missing = static_cast<double>(sum) / m;
  st.high = high;
  st.low = low;
  if (m > 1) {
    const double var =
        (static_cast<double>(sum_sq) - static_cast<double>(sum) * sum / m) /
        (m - 1);
    st.ci95_halfwidth = 1.96 * std::sqrt(std::max(0.0, var) / m);
  }
  st.coverage_pct = 100.0 * (1.0 - st.mean_missing / st.total_pairs);
  return st;
}

ExperimentStats stats_from_report(const FaultReport& report) {
  ExperimentStats st;
  st.samples = 1;
  st.total_pairs = report.total_pairs;
  st.observations = static_cast<long>(report.edges.size());
  long long sum = 0, sum_sq = 0;
  for (const auto& miss : report.missing) {
    const long long c = static_cast<long long>(miss.size());
    sum += c;
    sum_sq += c * c;
  }
  st.mean_missing = report.mean_missing();
  st.high = report.max_missing();
  st.low = report.min_missing();
  if (st.observations > 1) {
    const long m = st.observations;
    const double var =
        (static_cast<double>(sum_sq) - static_cast<double>(sum) * sum / m) /
        (m - 1);
    st.ci95_halfwidth = 1.96 * std::sqrt(std::max(0.0, var) / m);
  }
  st.coverage_pct = coverage(report);
  return st;
}

const char* const kStatsCsvHeader =
    "network,nodes,total_pairs,high,mean,ci95,low,coverage_pct";

std::string stats_csv_row(const std::string& network, int nodes,
                          const ExperimentStats& st) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%d,%d,%d,%.5f,%.5f,%d,%.3f",
                network.c_str(), nodes, st.total_pairs, st.high,
                st.mean_missing, st.ci95_halfwidth, st.low, st.coverage_pct);
  return buf;
}

std::string stats_json(const std::string& network, int nodes,
                       const ExperimentStats& st) {
  char buf[512];
  std::snprintf(
      buf, sizeof(buf),
      "{\"network\":\"%s\",\"nodes\":%d,\"total_pairs\":%d,\"high\":%d,"
      "\"mean\":%.5f,\"ci95\":%.5f,\"low\":%d,\"coverage_pct\":%.3f,"
      "\"samples\":%ld,\"failed_samples\":%ld}",
      network.c_str(), nodes, st.total_pairs, st.high, st.mean_missing,
      st.ci95_halfwidth, st.low, st.coverage_pct, st.samples,
      st.failed_samples);
  return buf;
}

void write_fault_report_csv(const FaultReport& report, std::ostream& out) {
  out << "edge_u,edge_v,missing_count,missing_pairs\n";
  for (std::size_t i = 0; i < report.edges.size(); ++i) {
    out << report.edges[i].first << "," << report.edges[i].second << ","
        << report.missing[i].size() << ",";
    for (std::size_t j = 0; j < report.missing[i].size(); ++j) {
      if (j) out << ";";
      out << report.missing[i][j].first << ">" << report.missing[i][j].second;
    }
    out << "\n";
  }
}

const char* trail_config_name(TrailConfig config) {
  return config == TrailConfig::paired ? "paired" : "quad";
}

TrailConfig trail_config_from_name(const std::string& name) {
  if (name == "paired") return TrailConfig::paired;
  if (name == "quad") return TrailConfig::quad;
  throw std::runtime_error("unknown trail config: " + name);
}

}  // namespace qcycle
