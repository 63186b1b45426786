#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "qcycle/quorum.hpp"

using namespace qcycle;

namespace {

const std::string kData = QCYCLE_DATA_DIR;

// Direct set-intersection check over all quorum pairs; the independent
// counterpart of the difference-cover criterion.
bool brute_force_pairwise_intersect(const QuorumSet& qs) {
  std::vector<std::set<int>> sets;
  for (const auto& q : qs.quorums) sets.emplace_back(q.begin(), q.end());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      bool meets = false;
      for (int a : sets[i]) {
        if (sets[j].count(a)) {
          meets = true;
          break;
        }
      }
      if (!meets) return false;
    }
  }
  return true;
}

// All size-k subsets of {1..n} that contain 1, lexicographic order.
void for_each_base(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> base(k);
  base[0] = 1;
  std::function<void(int, int)> rec = [&](int idx, int from) {
    if (idx == k) {
      fn(base);
      return;
    }
    for (int x = from; x <= n - (k - idx - 1); ++x) {
      base[idx] = x;
      rec(idx + 1, x + 1);
    }
  };
  rec(1, 2);
}

}  // namespace

TEST_SUITE("quorum") {

TEST_CASE("k_lower_bound solves K(K-1)+1 >= n") {
  CHECK(k_lower_bound(1) == 1);
  CHECK(k_lower_bound(3) == 2);
  CHECK(k_lower_bound(7) == 3);
  CHECK(k_lower_bound(13) == 4);
  CHECK(k_lower_bound(14) == 5);
  CHECK(k_lower_bound(20) == 5);
  CHECK(k_lower_bound(21) == 5);
  CHECK(k_lower_bound(22) == 6);
}

TEST_CASE("expand shifts the base cyclically") {
  SUBCASE("the n=14 working base") {
    QuorumSet qs = expand(14, {1, 2, 3, 4, 8});
    REQUIRE(qs.quorums.size() == 14);
    CHECK(qs.quorums[0] == std::vector<int>{1, 2, 3, 4, 8});
    CHECK(qs.quorums[7] == std::vector<int>{8, 9, 10, 11, 1});  // wraps at 14
    CHECK(qs.quorums[13] == std::vector<int>{14, 1, 2, 3, 7});
  }
  SUBCASE("smallest nontrivial shift") {
    QuorumSet qs = expand(3, {1, 2});
    CHECK(qs.quorums[0] == std::vector<int>{1, 2});
    CHECK(qs.quorums[1] == std::vector<int>{2, 3});
    CHECK(qs.quorums[2] == std::vector<int>{3, 1});
  }
  SUBCASE("input validation") {
    CHECK_THROWS_WITH_AS(expand(5, {2, 3}), doctest::Contains("contain node 1"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(expand(5, {1, 7}), doctest::Contains("out of range"),
                         std::runtime_error);
    CHECK_THROWS_AS(expand(5, {1, 2, 2}), std::runtime_error);
  }
}

TEST_CASE("verify accepts working sets and pinpoints failures") {
  SUBCASE("the published n=14 base passes") {
    CHECK(verify(expand(14, {1, 2, 3, 4, 8})).ok());
  }
  SUBCASE("full sets always intersect") {
    CHECK(verify(expand(4, {1, 2, 3, 4})).ok());
  }
  SUBCASE("n=5 base {1,2} has disjoint shifts") {
    VerifyResult vr = verify(expand(5, {1, 2}));
    REQUIRE_FALSE(vr.ok());
    bool found_1_4 = false;
    for (const auto& v : vr.violations) {
      CHECK(v.property == "intersection");
      if (v.a == 1 && v.b == 4) found_1_4 = true;  // S1={1,2}, S4={4,5}
    }
    CHECK(found_1_4);
  }
  SUBCASE("singleton base covers but never intersects") {
    VerifyResult vr = verify(expand(5, {1}));
    CHECK_FALSE(vr.ok());
    CHECK(vr.violations.front().property == "intersection");
  }
}

TEST_CASE("difference cover criterion") {
  CHECK(difference_covers(14, {1, 2, 3, 4, 8}));
  CHECK_FALSE(difference_covers(14, {1, 2, 3, 4, 7}));
  CHECK(difference_covers(7, {1, 2, 4}));
  CHECK_FALSE(difference_covers(5, {1, 2}));
  // base {1..ceil((n+1)/2)} always covers
  for (int n = 4; n <= 40; ++n) {
    std::vector<int> base;
    for (int a = 1; a <= (n + 2) / 2; ++a) base.push_back(a);
    CHECK(difference_covers(n, base));
  }
}

TEST_CASE("difference cover agrees with brute-force intersection checks") {
  // Exhaustive over every base (containing 1) of the sizes the optimal
  // search visits, for each n here; random sizes are covered implicitly.
  for (int n = 4; n <= 16; ++n) {
    const int hi = search_optimal(n).found_k;
    for (int k = std::max(2, k_lower_bound(n)); k <= hi; ++k) {
      for_each_base(n, k, [&](const std::vector<int>& base) {
        CHECK(difference_covers(n, base) ==
              brute_force_pairwise_intersect(expand(n, base)));
      });
    }
  }
}

TEST_CASE("search finds the published minimal bases") {
  SUBCASE("n=7 is a perfect difference set") {
    SearchReport rep = search_optimal(7);
    CHECK(rep.found_k == 3);
    CHECK(rep.k_lower == 3);
    CHECK(rep.base == std::vector<int>{1, 2, 4});
  }
  SUBCASE("n=14 takes size five") {
    SearchReport rep = search_optimal(14);
    CHECK(rep.found_k == 5);
    CHECK(rep.base == std::vector<int>{1, 2, 3, 4, 8});
  }
  SUBCASE("n=20 cannot meet the bound; size six") {
    SearchReport rep = search_optimal(20);
    CHECK(rep.k_lower == 5);
    CHECK(rep.found_k == 6);
  }
}

TEST_CASE("search results stay within the theoretical corridor") {
  for (int n = 4; n <= 30; ++n) {
    SearchReport rep = search_optimal(n);
    CHECK(rep.found_k >= k_lower_bound(n));
    CHECK(rep.found_k <= (n + 2) / 2);
    CHECK(verify(expand(n, rep.base)).ok());
  }
}

TEST_CASE("every ordered pair co-occurs in a verified set") {
  for (int n = 4; n <= 30; ++n) {
    QuorumSet qs = expand(n, search_optimal(n).base);
    REQUIRE(verify(qs).ok());
    std::vector<std::vector<char>> together(n + 1, std::vector<char>(n + 1, 0));
    for (const auto& q : qs.quorums) {
      for (int a : q) {
        for (int b : q) together[a][b] = 1;
      }
    }
    for (int u = 1; u <= n; ++u) {
      for (int v = 1; v <= n; ++v) {
        if (u != v) CHECK(together[u][v]);
      }
    }
  }
}

TEST_CASE("search determinism and budget accounting") {
  SearchReport a = search_optimal(18);
  SearchReport b = search_optimal(18);
  CHECK(a.base == b.base);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK_THROWS_WITH_AS(search_optimal(25, 0, 10),
                       doctest::Contains("budget exhausted"), std::runtime_error);
  CHECK_THROWS_AS(search_optimal(3), std::runtime_error);
}

TEST_CASE("known table lookups") {
  const std::string table = kData + "/quorums.txt";
  SUBCASE("n=14 lists the published base") {
    QuorumSet qs = load_known(table, 14);
    CHECK(qs.base == std::vector<int>{1, 2, 3, 4, 8});
    CHECK(qs.k() == 5);
  }
  SUBCASE("n=3") {
    QuorumSet qs = load_known(table, 3);
    CHECK(qs.base == std::vector<int>{1, 2});
  }
  SUBCASE("absent entry") {
    CHECK_THROWS_WITH_AS(load_known(table, 200), doctest::Contains("no quorum base"),
                         std::runtime_error);
  }
  SUBCASE("every listed entry expands and verifies") {
    for (int n = 2; n <= 30; ++n) {
      QuorumSet qs = load_known(table, n);
      CHECK(verify(qs).ok());
      CHECK(qs.n == n);
    }
    for (int n : {35, 50, 54, 65}) {
      CHECK(verify(load_known(table, n)).ok());
    }
  }
  SUBCASE("corrupt table entries are rejected") {
    const std::string bad = "/tmp/qcycle_test_bad_table.txt";
    std::ofstream(bad) << "# broken entries\n5: 1 2\n6: 2 3\n";
    CHECK_THROWS_WITH_AS(load_known(bad, 5), doctest::Contains("fails verification"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(load_known(bad, 6), doctest::Contains("contain node 1"),
                         std::runtime_error);
  }
}

}  // TEST_SUITE
