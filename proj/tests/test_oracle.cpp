#include "surprise/oracle.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "surprise/common.hpp"
#include "util.hpp"

using namespace surprise;

namespace {

std::string rgs_string(const std::vector<int>& a) {
  std::string s;
  for (int x : a) s += static_cast<char>('0' + x);
  return s;
}

long long count_partitions(int n) {
  long long c = 0;
  enumerate_partitions(n, [&](const std::vector<int>&) { ++c; });
  return c;
}

}  // namespace

TEST(EnumeratePartitions, BellNumbers) {
  const long long bell[] = {1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(count_partitions(n), bell[n - 1]) << "n=" << n;
}

TEST(EnumeratePartitions, LexOrderEndpoints) {
  std::vector<std::string> seen;
  enumerate_partitions(3, [&](const std::vector<int>& a) { seen.push_back(rgs_string(a)); });
  ASSERT_EQ(seen.size(), 5u);
  EXPECT_EQ(seen.front(), "000");
  EXPECT_EQ(seen.back(), "012");
  // strictly increasing as strings
  for (size_t i = 1; i < seen.size(); ++i) EXPECT_LT(seen[i - 1], seen[i]);
}

TEST(EnumeratePartitions, AssignmentsAreCanonical) {
  enumerate_partitions(6, [&](const std::vector<int>& a) {
    EXPECT_EQ(a[0], 0);
    int mx = 0;
    for (int x : a) {
      EXPECT_LE(x, mx + 1);
      mx = std::max(mx, x);
    }
  });
}

TEST(BruteForceOptimum, PathThree) {
  Graph g = testutil::path_graph(3);
  auto opt = brute_force_surprise_optimum(g);
  EXPECT_EQ(opt.partitions, 5);
  EXPECT_EQ(opt.value.probability, Rational(2, 3));
  EXPECT_EQ(opt.i_e, 1);
  EXPECT_EQ(opt.i_p, 1);
  // first minimizer in lex order: {0,1},{2}
  EXPECT_EQ(opt.clustering.assignment, (std::vector<int>{0, 0, 1}));
}

TEST(BruteForceOptimum, CycleFive) {
  Graph g = testutil::cycle_graph(5);
  auto opt = brute_force_surprise_optimum(g);
  EXPECT_EQ(opt.value.probability, Rational(2, 9));
  EXPECT_EQ(opt.i_e, 2);
  EXPECT_EQ(opt.i_p, 2);
  EXPECT_EQ(opt.clustering.cluster_count, 3);
  EXPECT_EQ(opt.clustering.assignment, (std::vector<int>{0, 0, 1, 1, 2}));
}

TEST(BruteForceOptimum, CompleteGraphStaysWhole) {
  Graph g = testutil::complete_graph(5);
  auto opt = brute_force_surprise_optimum(g);
  EXPECT_EQ(opt.clustering.cluster_count, 1);
  EXPECT_EQ(opt.value.probability, Rational(1));
}

TEST(BruteForceOptimum, GuardRejectsLargeGraphs) {
  Graph g = testutil::path_graph(kOracleMaxVertices + 1);
  EXPECT_THROW(brute_force_surprise_optimum(g), GuardError);
}

TEST(BruteForceMinIP, MatchesByHandOnPaths) {
  // P4: edges 0-1,1-2,2-3. exactly 2 intra edges with min pairs:
  // {0,1},{2,3} -> ip=2, ie=2.
  Graph g = testutil::path_graph(4);
  auto r = brute_force_minip(g, 2, false);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->i_p, 2);
  EXPECT_EQ(r->i_e, 2);
}

TEST(BruteForceMinIP, InfeasibleWhenTooFewEdges) {
  Graph g = testutil::path_graph(3);  // m=2
  EXPECT_FALSE(brute_force_minip(g, 3, false).has_value());
  EXPECT_FALSE(brute_force_minip(g, 3, true).has_value());
}

TEST(BruteForceMinIP, AtLeastNeverWorseThanExact) {
  auto graphs = testutil::connected_graphs_up_to_iso(5);
  for (const auto& g : graphs) {
    for (int k = 1; k <= static_cast<int>(g.edge_count()); ++k) {
      auto ex = brute_force_minip(g, k, false);
      auto rel = brute_force_minip(g, k, true);
      ASSERT_TRUE(rel.has_value());
      if (ex.has_value()) EXPECT_LE(rel->i_p, ex->i_p);
    }
  }
}
