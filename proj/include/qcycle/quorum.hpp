#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qcycle {

// Family of N subsets of {1..N} generated by cyclically shifting one base
// set. Quorum i is the base shifted by (i-1) with wraparound back into
// 1..N; each quorum is kept in base order so listings read like the shift
// construction.
struct QuorumSet {
  int n = 0;
  std::vector<int> base;                  // sorted ascending, contains 1
  std::vector<std::vector<int>> quorums;  // quorums[i-1] = base shifted by i-1

  int k() const { return static_cast<int>(base.size()); }
};

// Smallest K with K*(K-1)+1 >= n.
int k_lower_bound(int n);

// Builds all N shifts. Does not verify intersection; pair with verify().
QuorumSet expand(int n, const std::vector<int>& base);

// True iff the pairwise differences of base modulo n cover every residue
// 0..n-1; equivalent to all cyclic shifts pairwise intersecting.
bool difference_covers(int n, const std::vector<int>& base);

struct Violation {
  std::string property;  // union | intersection | equal_size | equal_responsibility
  int a = 0, b = 0;      // witness: quorum pair, node id, or quorum index
  std::string detail;
};

struct VerifyResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks union coverage, pairwise intersection (brute force over all
// quorum pairs), equal size, and equal responsibility, reporting each
// failure with a witness.
VerifyResult verify(const QuorumSet& qs);

struct SearchReport {
  int n = 0;
  int k_lower = 0;
  int found_k = 0;
  std::vector<int> base;
  std::uint64_t nodes_explored = 0;
  double elapsed_seconds = 0.0;
};

// Exhaustive search over bases containing 1, in lexicographic order at
// each K starting from k_lower_bound(n); returns the first (hence
// lexicographically smallest) base of the smallest feasible size.
// k_cap 0 means ceil((n+1)/2), which always admits a solution.
SearchReport search_optimal(int n, int k_cap = 0,
                            std::uint64_t budget = 100'000'000);

// Table file: lines "n: a1 a2 ... aK", '#' comments allowed. The returned
// set is expanded and verified.
QuorumSet load_known(const std::string& path, int n);

}  // namespace qcycle
