// Command-line front end: every pipeline stage (quorum search, cycle
// routing, fault simulation, batch experiments, topology generation,
// renumbering studies, cycle repair) behind one binary with explicit
// seeds, so every table a run prints can be regenerated byte-for-byte.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcycle/cyclerouter.hpp"
#include "qcycle/faultsim.hpp"
#include "qcycle/lighttrail.hpp"
#include "qcycle/netgraph.hpp"
#include "qcycle/quorum.hpp"

namespace {

using namespace qcycle;

void print_quorum_set(const QuorumSet& qs, const std::string& format) {
  if (format == "json") {
    std::cout << "{\"n\":" << qs.n << ",\"k\":" << qs.k() << ",\"base\":[";
    for (std::size_t i = 0; i < qs.base.size(); ++i) {
      std::cout << (i ? "," : "") << qs.base[i];
    }
    std::cout << "],\"quorums\":[";
    for (std::size_t i = 0; i < qs.quorums.size(); ++i) {
      std::cout << (i ? ",[" : "[");
      for (std::size_t j = 0; j < qs.quorums[i].size(); ++j) {
        std::cout << (j ? "," : "") << qs.quorums[i][j];
      }
      std::cout << "]";
    }
    std::cout << "]}\n";
    return;
  }
  std::cout << "n: " << qs.n << "\nK: " << qs.k() << "\nbase:";
  for (int a : qs.base) std::cout << " " << a;
  std::cout << "\nquorums:\n";
  for (std::size_t i = 0; i < qs.quorums.size(); ++i) {
    std::cout << "  " << (i + 1) << ":";
    for (int a : qs.quorums[i]) std::cout << " " << a;
    std::cout << "\n";
  }
}

QuorumSet quorum_source(int n, bool search, const std::string& table) {
  if (search) {
    SearchReport rep = search_optimal(n);
    return expand(n, rep.base);
  }
  if (table.empty()) {
    throw std::runtime_error("need a quorum source: --search or --table PATH");
  }
  return load_known(table, n);
}

void print_solution_table(const RoutingSolution& sol) {
  std::cout << "#\tquorum\tcycle\tsize\n";
  for (const auto& c : sol.cycles) {
    std::cout << c.quorum_id << "\t";
    for (std::size_t i = 0; i < c.quorum.size(); ++i) {
      std::cout << (i ? " " : "") << c.quorum[i];
    }
    std::cout << "\t";
    for (std::size_t i = 0; i < c.walk.size(); ++i) {
      std::cout << (i ? " " : "") << c.walk[i];
    }
    std::cout << "\t" << c.length() << "\n";
  }
  char avg[32];
  std::snprintf(avg, sizeof(avg), "%.2f", sol.average_length());
  std::cout << "Average: " << avg << "\nTotal: " << sol.total_links() << "\n";
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

int cmd_quorum(int n, bool search, const std::string& table,
               const std::string& format) {
  if (search) {
    SearchReport rep = search_optimal(n);
    std::cout << "k_lower_bound: " << rep.k_lower
              << "\nnodes_explored: " << rep.nodes_explored << "\nelapsed_s: ";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", rep.elapsed_seconds);
    std::cout << buf << "\n";
    QuorumSet qs = expand(n, rep.base);
    VerifyResult vr = verify(qs);
    print_quorum_set(qs, format);
    std::cout << "verify: " << (vr.ok() ? "pass" : "FAIL") << "\n";
    for (const auto& v : vr.violations) {
      std::cout << "  violated " << v.property << ": " << v.detail << "\n";
    }
    return vr.ok() ? 0 : 1;
  }
  QuorumSet qs = quorum_source(n, false, table);
  std::cout << "k_lower_bound: " << k_lower_bound(n) << "\n";
  print_quorum_set(qs, format);
  std::cout << "verify: pass\n";  // load_known verifies
  return 0;
}

int cmd_route(const std::string& network, bool search, const std::string& table,
              const std::string& out, int workers) {
  Network net = load_network(network);
  NetworkFindings findings = validate(net);
  if (!findings.two_edge_connected) {
    std::string detail = findings.connected
                             ? "bridge (" + std::to_string(findings.bridges.front().first) +
                                   "," + std::to_string(findings.bridges.front().second) + ")"
                             : "network is disconnected";
    throw std::runtime_error("network is not 2-edge-connected: " + detail);
  }
  QuorumSet qs = quorum_source(net.n(), search, table);
  RoutingSolution sol = route_all(net, qs, workers);
  for (const auto& c : sol.cycles) {
    auto problems = validate_cycle(net, c);
    if (!problems.empty()) {
      throw std::runtime_error("cycle " + std::to_string(c.quorum_id) +
                               " failed validation: " + problems.front());
    }
  }
  print_solution_table(sol);
  if (!out.empty()) save_solution(sol, out);
  return 0;
}

int cmd_simulate(const std::string& network, const std::string& solution,
                 const std::string& config_name, const std::string& hub,
                 const std::string& out, const std::string& format) {
  Network net = load_network(network);
  RoutingSolution sol = load_solution(solution, net);
  TrailConfig config = trail_config_from_name(config_name);

  FaultReport report = simulate(net, sol, config, 0);
  ExperimentStats st = stats_from_report(report);
  if (format == "json") {
    std::cout << stats_json(net.name(), net.n(), st) << "\n";
  } else {
    std::cout << kStatsCsvHeader << "\n"
              << stats_csv_row(net.name(), net.n(), st) << "\n";
  }
  if (hub == "sweep") {
    HubSweepResult sweep = sweep_hubs(net, sol, config);
    std::cout << "hub_offset,mean_missing,coverage_pct\n";
    for (const auto& e : sweep.entries) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%d,%.5f,%.3f", e.offset, e.mean_missing,
                    e.coverage_pct);
      std::cout << buf << "\n";
    }
    std::cout << "best_offset: " << sweep.best_offset
              << "\nworst_offset: " << sweep.worst_offset << "\n";
  }
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    write_fault_report_csv(report, f);
  }
  return 0;
}

int cmd_batch(const std::string& network, bool search, const std::string& table,
              int samples, std::uint64_t seed, const std::string& config_name,
              const std::string& out, const std::string& format, int workers) {
  Network net = load_network(network);
  QuorumSet qs = quorum_source(net.n(), search, table);
  TrailConfig config = trail_config_from_name(config_name);
  ExperimentStats st = batch_experiment(net, qs, samples, seed, config, workers);
  std::string body = format == "json"
                         ? stats_json(net.name(), net.n(), st) + "\n"
                         : std::string(kStatsCsvHeader) + "\n" +
                               stats_csv_row(net.name(), net.n(), st) + "\n";
  std::cout << body;
  if (st.failed_samples > 0) {
    std::cout << "failed_samples: " << st.failed_samples << "\n";
  }
  if (!out.empty()) write_text_file(out, body);
  return 0;
}

int cmd_generate(int nodes, double alpha, double beta, double grid,
                 std::uint64_t seed, const std::string& preset,
                 const std::string& length, bool allow_disconnected,
                 const std::string& out) {
  WaxmanConfig cfg;
  if (!preset.empty()) {
    Density d = preset == "sparse"   ? Density::sparse
                : preset == "medium" ? Density::medium
                                     : Density::dense;
    EdgeLength l = length == "short" ? EdgeLength::short_edges
                                     : EdgeLength::long_edges;
    cfg = waxman_preset(nodes, d, l, seed, !allow_disconnected);
  } else {
    cfg.n = nodes;
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.grid = grid;
    cfg.seed = seed;
    cfg.require_connected = !allow_disconnected;
  }
  Network net = waxman_generate(cfg);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", net.mean_degree());
  std::cout << "n: " << net.n() << "\nedges: " << net.edge_count()
            << "\nmean_degree: " << buf << "\nbeta: ";
  std::snprintf(buf, sizeof(buf), "%.6f", cfg.beta);
  std::cout << buf << "\n";
  if (!out.empty()) save_network(net, out);
  return 0;
}

int cmd_renumber(const std::string& network, bool search,
                 const std::string& table, int count, std::uint64_t seed,
                 const std::string& out, int workers) {
  Network net = load_network(network);
  QuorumSet qs = quorum_source(net.n(), search, table);

  RoutingSolution original = route_all(net, qs, workers);
  std::string csv = "seed,total_links\n";
  long best = -1, worst = -1;
  int failures = 0;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t sample_seed = seed + static_cast<std::uint64_t>(i);
    Renumbering rn = renumber(net, sample_seed);
    try {
      RoutingSolution sol = route_all(rn.net, qs, workers);
      const long total = sol.total_links();
      csv += std::to_string(sample_seed) + "," + std::to_string(total) + "\n";
      if (best < 0 || total < best) best = total;
      if (total > worst) worst = total;
    } catch (const std::exception& e) {
      ++failures;
      csv += std::to_string(sample_seed) + ",failed\n";
    }
  }
  std::cout << csv;
  if (!out.empty()) write_text_file(out, csv);
  if (best > 0) {
    const double spread = 100.0 * (worst - best) / best;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", spread);
    std::cout << "original_total: " << original.total_links() << "\nmin: " << best
              << "\nmax: " << worst << "\nspread_pct: " << buf << "\n";
  }
  if (failures > 0) std::cout << "failed_numberings: " << failures << "\n";
  return 0;
}

int cmd_repair(const std::string& network, const std::string& solution,
               const std::string& config_name, const std::string& out) {
  Network net = load_network(network);
  RoutingSolution sol = load_solution(solution, net);
  TrailConfig config = trail_config_from_name(config_name);

  FaultReport before = simulate(net, sol, config, 0);
  RepairOutcome outcome = repair_missing_pairs(net, sol, before);
  char b1[32], b2[32];
  std::snprintf(b1, sizeof(b1), "%.5f", outcome.before_mean);
  std::snprintf(b2, sizeof(b2), "%.5f", outcome.after_mean);
  std::cout << "rounds: " << outcome.rounds << "\nbefore_total: "
            << outcome.before_total << "\nafter_total: " << outcome.after_total
            << "\nbefore_mean: " << b1 << "\nafter_mean: " << b2 << "\n";
  if (!outcome.unrepairable.empty()) {
    std::cout << "unrepairable:\n";
    for (const auto& t : outcome.unrepairable) {
      std::cout << "  (" << t.s << ">" << t.d << ", edge " << t.edge.first
                << "-" << t.edge.second << "): " << t.reason << "\n";
    }
  }
  if (!out.empty()) save_solution(outcome.solution, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quorum-based optical cycle routing and fault analysis"};
  app.require_subcommand(1);

  std::string network, table, solution, out, format = "csv";
  std::string config_name = "paired", hub = "first", preset, length = "long";
  int n = 0, samples = 1, workers = 1, nodes = 0;
  std::uint64_t seed = 0;
  double alpha = 0.4, beta = 0.5, grid = 1.0;
  bool search = false, allow_disconnected = false;

  auto* quorum = app.add_subcommand("quorum", "Search or look up a cyclic quorum set");
  quorum->add_option("--n", n, "universe size")->required();
  quorum->add_flag("--search", search, "exhaustive search");
  quorum->add_option("--table", table, "known-quorum table file");
  quorum->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* route = app.add_subcommand("route", "Route one cycle per quorum");
  route->add_option("--network", network)->required();
  route->add_flag("--search", search);
  route->add_option("--table", table);
  route->add_option("--out", out, "solution JSON path");
  route->add_option("--workers", workers);

  auto* sim = app.add_subcommand("simulate", "Single-edge fault simulation");
  sim->add_option("--network", network)->required();
  sim->add_option("--solution", solution)->required();
  sim->add_option("--config", config_name)->check(CLI::IsMember({"paired", "quad"}));
  sim->add_option("--hub", hub)->check(CLI::IsMember({"first", "sweep"}));
  sim->add_option("--out", out, "per-edge CSV path");
  sim->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* batch = app.add_subcommand("batch", "Fault stats over random numberings");
  batch->add_option("--network", network)->required();
  batch->add_flag("--search", search);
  batch->add_option("--table", table);
  batch->add_option("--samples", samples)->required();
  batch->add_option("--seed", seed)->required();
  batch->add_option("--config", config_name)->check(CLI::IsMember({"paired", "quad"}));
  batch->add_option("--out", out, "stats CSV path");
  batch->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  batch->add_option("--workers", workers);

  auto* gen = app.add_subcommand("generate", "Waxman random topology");
  gen->add_option("--nodes", nodes)->required();
  gen->add_option("--alpha", alpha);
  gen->add_option("--beta", beta);
  gen->add_option("--grid", grid);
  gen->add_option("--preset", preset)->check(CLI::IsMember({"sparse", "medium", "dense"}));
  gen->add_option("--length", length)->check(CLI::IsMember({"short", "long"}));
  gen->add_flag("--allow-disconnected", allow_disconnected);
  gen->add_option("--seed", seed)->required();
  gen->add_option("--out", out, "network file path");

  auto* ren = app.add_subcommand("renumber", "Total-links spread over random numberings");
  ren->add_option("--network", network)->required();
  ren->add_flag("--search", search);
  ren->add_option("--table", table);
  ren->add_option("--samples", samples)->required();
  ren->add_option("--seed", seed)->required();
  ren->add_option("--out", out, "CSV path");
  ren->add_option("--workers", workers);

  auto* rep = app.add_subcommand("repair", "Missing-pair cycle repair");
  rep->add_option("--network", network)->required();
  rep->add_option("--solution", solution)->required();
  rep->add_option("--config", config_name)->check(CLI::IsMember({"paired", "quad"}));
  rep->add_option("--out", out, "repaired solution JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (quorum->parsed()) return cmd_quorum(n, search, table, format);
    if (route->parsed()) return cmd_route(network, search, table, out, workers);
    if (sim->parsed()) return cmd_simulate(network, solution, config_name, hub, out, format);
    if (batch->parsed()) {
      return cmd_batch(network, search, table, samples, seed, config_name, out,
                       format, workers);
    }
    if (gen->parsed()) {
      return cmd_generate(nodes, alpha, beta, grid, seed, preset, length,
                          allow_disconnected, out);
    }
    if (ren->parsed()) {
      return cmd_renumber(network, search, table, samples, seed, out, workers);
    }
    if (rep->parsed()) return cmd_repair(network, solution, config_name, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
