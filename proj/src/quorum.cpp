#include "qcycle/quorum.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcycle {

int k_lower_bound(int n) {
  if (n < 1) throw std::runtime_error("k_lower_bound: n must be >= 1");
  int k = 1;
  while (static_cast<long>(k) * (k - 1) + 1 < n) ++k;
  return k;
}

QuorumSet expand(int n, const std::vector<int>& base) {
  if (n < 1) throw std::runtime_error("expand: n must be >= 1");
  std::vector<int> b = base;
  std::sort(b.begin(), b.end());
  if (b.empty() || b.front() != 1) {
    throw std::runtime_error("expand: base must contain node 1");
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] < 1 || b[i] > n) {
      throw std::runtime_error("expand: base element " + std::to_string(b[i]) +
                               " out of range 1.." + std::to_string(n));
    }
    if (i > 0 && b[i] == b[i - 1]) {
      throw std::runtime_error("expand: duplicate base element " +
                               std::to_string(b[i]));
    }
  }
  QuorumSet qs;
  qs.n = n;
  qs.base = b;
  qs.quorums.reserve(n);
  for (int shift = 0; shift < n; ++shift) {
    std::vector<int> q;
    q.reserve(b.size());
    for (int a : b) q.push_back((a - 1 + shift) % n + 1);
    qs.quorums.push_back(std::move(q));
  }
  return qs;
}

bool difference_covers(int n, const std::vector<int>& base) {
  std::vector<char> hit(n, 0);
  int covered = 0;
  for (int a : base) {
    for (int b : base) {
      int d = ((a - b) % n + n) % n;
      if (!hit[d]) {
        hit[d] = 1;
        ++covered;
      }
    }
  }
  return covered == n;
}

VerifyResult verify(const QuorumSet& qs) {
  VerifyResult res;
  const int n = qs.n;
  const int words = (n + 63) / 64;

  std::vector<std::vector<std::uint64_t>> bits(qs.quorums.size(),
                                               std::vector<std::uint64_t>(words, 0));
  std::vector<int> appearances(n + 1, 0);
  for (std::size_t i = 0; i < qs.quorums.size(); ++i) {
    for (int a : qs.quorums[i]) {
      bits[i][(a - 1) >> 6] |= 1ull << ((a - 1) & 63);
      if (a >= 1 && a <= n) ++appearances[a];
    }
  }

  if (static_cast<int>(qs.quorums.size()) != n) {
    res.violations.push_back({"equal_size", static_cast<int>(qs.quorums.size()),
                              n, "quorum count differs from n"});
  }

  // Union covers {1..n}.
  std::vector<std::uint64_t> all(words, 0);
  for (const auto& b : bits) {
    for (int w = 0; w < words; ++w) all[w] |= b[w];
  }
  for (int a = 1; a <= n; ++a) {
    if (!(all[(a - 1) >> 6] >> ((a - 1) & 63) & 1)) {
      res.violations.push_back({"union", a, 0,
                                "node " + std::to_string(a) + " in no quorum"});
    }
  }

  // Every pair of quorums intersects.
  for (std::size_t i = 0; i < qs.quorums.size(); ++i) {
    for (std::size_t j = i + 1; j < qs.quorums.size(); ++j) {
      bool meets = false;
      for (int w = 0; w < words && !meets; ++w) {
        meets = (bits[i][w] & bits[j][w]) != 0;
      }
      if (!meets) {
        res.violations.push_back(
            {"intersection", static_cast<int>(i + 1), static_cast<int>(j + 1),
             "S" + std::to_string(i + 1) + " and S" + std::to_string(j + 1) +
                 " are disjoint"});
      }
    }
  }

  // Equal work: every quorum the same size as the base.
  for (std::size_t i = 0; i < qs.quorums.size(); ++i) {
    if (qs.quorums[i].size() != qs.base.size()) {
      res.violations.push_back({"equal_size", static_cast<int>(i + 1),
                                static_cast<int>(qs.quorums[i].size()),
                                "quorum size differs from K"});
    }
  }

  // Equal responsibility: every node in exactly K quorums.
  for (int a = 1; a <= n; ++a) {
    if (appearances[a] != qs.k()) {
      res.violations.push_back({"equal_responsibility", a, appearances[a],
                                "node " + std::to_string(a) + " appears in " +
                                    std::to_string(appearances[a]) +
                                    " quorums, expected " +
                                    std::to_string(qs.k())});
    }
  }
  return res;
}

namespace {

// Lexicographic DFS over 0-based residue sets {0, b2, ..., bK}. Maintains
// the covered-difference counts incrementally; the first complete cover
// found is the lexicographically smallest base of size K.
struct DiffSearch {
  int n;
  int k;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<int> cur;
  std::vector<int> cnt;  // cnt[d] = how many pairs currently realize difference d
  int covered = 0;
  std::vector<int> found;

  DiffSearch(int n_, int k_, std::uint64_t budget_)
      : n(n_), k(k_), budget(budget_), cnt(n_, 0) {}

  void add(int x) {
    for (int e : cur) {
      bump(((x - e) % n + n) % n);
      bump(((e - x) % n + n) % n);
    }
    cur.push_back(x);
  }

  void remove() {
    int x = cur.back();
    cur.pop_back();
    for (int e : cur) {
      drop(((x - e) % n + n) % n);
      drop(((e - x) % n + n) % n);
    }
  }

  void bump(int d) {
    if (cnt[d]++ == 0) ++covered;
  }
  void drop(int d) {
    if (--cnt[d] == 0) --covered;
  }

  bool dfs() {
    if (++nodes > budget) {
      throw std::runtime_error(
          "quorum search budget exhausted after " + std::to_string(nodes - 1) +
          " nodes (n=" + std::to_string(n) + ", K=" + std::to_string(k) +
          ", best prefix so far has " + std::to_string(covered) + "/" +
          std::to_string(n) + " differences covered)");
    }
    const int size = static_cast<int>(cur.size());
    if (size == k) {
      if (covered == n) {
        found = cur;
        return true;
      }
      return false;
    }
    // Remaining ordered pairs can cover at most k(k-1) - size(size-1) new
    // differences.
    const int possible = k * (k - 1) - size * (size - 1);
    if (n - covered > possible) return false;

    const int remaining = k - size;
    for (int x = cur.back() + 1; x <= n - remaining; ++x) {
      add(x);
      if (dfs()) return true;
      remove();
    }
    return false;
  }
};

}  // namespace

SearchReport search_optimal(int n, int k_cap, std::uint64_t budget) {
  if (n < 4) throw std::runtime_error("search_optimal: n must be >= 4");
  const int lb = k_lower_bound(n);
  if (k_cap == 0) k_cap = (n + 2) / 2;  // ceil((n+1)/2) always covers
  if (k_cap < lb) {
    throw std::runtime_error("search_optimal: k_cap " + std::to_string(k_cap) +
                             " below lower bound " + std::to_string(lb));
  }

  const auto start = std::chrono::steady_clock::now();
  SearchReport rep;
  rep.n = n;
  rep.k_lower = lb;

  std::uint64_t nodes = 0;
  for (int k = lb; k <= k_cap; ++k) {
    DiffSearch s(n, k, budget - nodes);
    s.cur.push_back(0);  // node 1 fixed in the base
    s.bump(0);
    bool hit;
    try {
      hit = s.dfs();
    } catch (const std::exception&) {
      rep.nodes_explored = nodes + s.nodes;
      throw;
    }
    nodes += s.nodes;
    if (hit) {
      rep.found_k = k;
      rep.base.reserve(k);
      for (int r : s.found) rep.base.push_back(r + 1);
      rep.nodes_explored = nodes;
      rep.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      return rep;
    }
  }
  throw std::runtime_error("search_optimal: no cyclic base of size <= " +
                           std::to_string(k_cap) + " for n=" +
                           std::to_string(n) + " (" + std::to_string(nodes) +
                           " nodes explored)");
}

QuorumSet load_known(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open quorum table: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    int entry_n;
    try {
      entry_n = std::stoi(line.substr(0, colon));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": malformed table line");
    }
    if (entry_n != n) continue;
    std::istringstream iss(line.substr(colon + 1));
    std::vector<int> base;
    int a;
    while (iss >> a) base.push_back(a);
    QuorumSet qs = expand(n, base);
    VerifyResult vr = verify(qs);
    if (!vr.ok()) {
      throw std::runtime_error(path + ": table entry for n=" +
                               std::to_string(n) + " fails verification: " +
                               vr.violations.front().detail);
    }
    return qs;
  }
  throw std::runtime_error(path + ": no quorum base listed for n=" +
                           std::to_string(n));
}

}  // namespace qcycle
