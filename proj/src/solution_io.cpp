#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qcycle/cyclerouter.hpp"

namespace qcycle {

std::string solution_to_json(const RoutingSolution& sol) {
  nlohmann::ordered_json j;
  j["network"] = sol.network_name;
  j["nodes"] = sol.n;
  j["total_links"] = sol.total_links();
  j["average"] = sol.average_length();
  j["cycles"] = nlohmann::ordered_json::array();
  for (const auto& c : sol.cycles) {
    nlohmann::ordered_json jc;
    jc["quorum_id"] = c.quorum_id;
    jc["quorum"] = c.quorum;
    jc["walk"] = c.walk;
    jc["length"] = c.length();
    j["cycles"].push_back(std::move(jc));
  }
  return j.dump(2) + "\n";
}

RoutingSolution solution_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("solution parse error: ") + e.what());
  }
  RoutingSolution sol;
  sol.network_name = j.at("network").get<std::string>();
  sol.n = j.at("nodes").get<int>();
  for (const auto& jc : j.at("cycles")) {
    Cycle c;
    c.quorum_id = jc.at("quorum_id").get<int>();
    c.quorum = jc.at("quorum").get<std::vector<int>>();
    c.walk = jc.at("walk").get<std::vector<int>>();
    sol.cycles.push_back(std::move(c));
  }
  return sol;
}

void save_solution(const RoutingSolution& sol, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write solution file: " + path);
  out << solution_to_json(sol);
}

RoutingSolution load_solution(const std::string& path, const Network& net) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  RoutingSolution sol = solution_from_json(buf.str());
  if (sol.n != net.n()) {
    throw std::runtime_error("solution is for " + std::to_string(sol.n) +
                             " nodes but network " + net.name() + " has " +
                             std::to_string(net.n()));
  }
  for (const auto& c : sol.cycles) {
    auto problems = validate_cycle(net, c);
    if (!problems.empty()) {
      throw std::runtime_error("cycle " + std::to_string(c.quorum_id) +
                               " invalid on network " + net.name() + ": " +
                               problems.front());
    }
  }
  return sol;
}

}  // namespace qcycle
