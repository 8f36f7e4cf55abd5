#include <gtest/gtest.h>

#include <sstream>

#include "rcx/morse.hpp"
#include "rcx/verify.hpp"

using namespace rcx;

namespace {

Graph random_graph(int n, double p, std::uint64_t seed) {
  auto rng = SplitMix64::stream(seed, 0);
  return sample_gnp(n, p, rng);
}

std::string dump(const Matching& m) {
  std::ostringstream os;
  m.dump(os);
  return os.str();
}

const Graph k3 = Graph::complete(3);
const Graph path3 = Graph::from_edges(3, {{1, 3}, {2, 3}});

}  // namespace

TEST(LexMatching, WorkedExample) {
  const Matching m = lex_matching(worked_example_graph(), 3);
  EXPECT_EQ(m.size(), 5u);
  EXPECT_EQ(dump(m), "2 -> 1,2\n3 -> 2,3\n4 -> 1,4\n5 -> 3,5\n4,5 -> 3,4,5\n");
  EXPECT_TRUE(m.has_pair(Simplex({4, 5}), Simplex({3, 4, 5})));
  EXPECT_FALSE(m.contains(Simplex{1}));
  EXPECT_FALSE(m.contains(Simplex({3, 4})));
}

TEST(LexMatching, Triangle) {
  const Matching m = lex_matching(k3, 3);
  Matching want;
  want.add(Simplex{2}, Simplex({1, 2}));
  want.add(Simplex{3}, Simplex({1, 3}));
  want.add(Simplex({2, 3}), Simplex({1, 2, 3}));
  EXPECT_EQ(m, want);
}

TEST(LexMatching, SingleVertexIsEmpty) { EXPECT_TRUE(lex_matching(Graph(1), 1).empty()); }

TEST(LexMatching, AddedVertexPrecedesMinimum) {
  for (int r = 0; r < 50; ++r) {
    const Graph g = random_graph(10, 0.6, 40 + r);
    const Matching m = lex_matching(g, 10);
    for (const auto& [f, c] : m.pairs()) {
      ASSERT_EQ(c.size(), f.size() + 1);
      ASSERT_LT(c.min(), f.min());
      ASSERT_TRUE(f.is_face_of(c));
    }
  }
}

TEST(LexMatching, FacesBoundedByMaxSize) {
  const Graph g = Graph::complete(6);
  EXPECT_EQ(lex_matching(g, 3).max_coface_size(), 4);
  EXPECT_EQ(lex_matching(g, 6).max_coface_size(), 6);
}

TEST(Matching, RejectsInvalidPairs) {
  Matching m;
  EXPECT_THROW(m.add(Simplex{1}, Simplex({2, 3})), DomainError);
  EXPECT_THROW(m.add(Simplex{1}, Simplex({1, 2, 3})), DomainError);
  m.add(Simplex{2}, Simplex({1, 2}));
  EXPECT_THROW(m.add(Simplex({1, 2}), Simplex({1, 2, 3})), DomainError);
}

TEST(CriticalCounts, DirectExamples) {
  EXPECT_EQ(critical_counts_direct(worked_example_graph(), 2).counts, (std::vector<std::int64_t>{1, 0}));
  EXPECT_EQ(critical_counts_direct(k3, 2).counts, (std::vector<std::int64_t>{0, 0}));
  EXPECT_EQ(critical_counts_direct(Graph(3), 2).counts, (std::vector<std::int64_t>{0, 0}));
}

TEST(CriticalCounts, FormulaExamples) {
  EXPECT_EQ(critical_counts_formula(worked_example_graph(), 2).counts, (std::vector<std::int64_t>{1, 0}));
  EXPECT_EQ(critical_counts_formula(path3, 1).counts, (std::vector<std::int64_t>{1}));
  EXPECT_EQ(critical_counts_formula(k3, 1).counts, (std::vector<std::int64_t>{0}));
}

TEST(CriticalCounts, RejectsOversizedDimension) {
  EXPECT_THROW(critical_counts_direct(k3, 3), DomainError);
  EXPECT_THROW(critical_counts_formula(k3, 3), DomainError);
}

TEST(CriticalCounts, BoundedByCliqueCounts) {
  for (int r = 0; r < 100; ++r) {
    const Graph g = random_graph(11, 0.5, 900 + r);
    const auto c = critical_counts_formula(g, 3);
    for (int size = 2; size <= 4; ++size) {
      EXPECT_GE(c.of_size(size), 0);
      EXPECT_LE(static_cast<std::uint64_t>(c.of_size(size)), clique_count(g, size));
    }
  }
}

TEST(CriticalCounts, EquivalenceOnAllGraphsUpToFive) {
  for (int n = 2; n <= 5; ++n)
    for (auto it = all_graphs(n).begin(); it != all_graphs(n).end(); ++it) {
      const Graph g = *it;
      for (int d = 1; d <= std::min(3, n - 1); ++d)
        ASSERT_EQ(critical_counts_direct(g, d), critical_counts_formula(g, d)) << "n=" << n << " mask=" << it.mask();
    }
}

TEST(CriticalCounts, EquivalenceOnRandomGraphs) {
  for (int r = 0; r < 300; ++r) {
    const int n = 7 + r % 6;
    const Graph g = random_graph(n, 0.2 + 0.15 * (r % 5), 77 + r);
    for (int d = 1; d <= 3; ++d) ASSERT_EQ(critical_counts_direct(g, d), critical_counts_formula(g, d));
  }
}

TEST(TruncatedCount, Examples) {
  EXPECT_EQ(truncated_critical_count(path3, 2, 1), 0);
  EXPECT_EQ(truncated_critical_count(path3, 2, 2), 1);
  for (int k = 2; k <= 4; ++k)
    for (int K = 1; K <= 6 - k + 1; ++K) EXPECT_EQ(truncated_critical_count(Graph(6), k, K), 0);
}

TEST(TruncatedCount, MonotoneAndExactAtTop) {
  for (int r = 0; r < 60; ++r) {
    const int n = 12;
    const Graph g = random_graph(n, 0.5, 300 + r);
    const auto full = critical_counts_formula(g, 3);
    for (int k = 2; k <= 4; ++k) {
      std::int64_t prev = 0;
      for (int K = 1; K <= n - k + 1; ++K) {
        const auto t = truncated_critical_count(g, k, K);
        ASSERT_GE(t, prev);
        prev = t;
      }
      ASSERT_EQ(prev, full.of_size(k));
    }
  }
}

TEST(TruncatedCount, RejectsBadThreshold) {
  EXPECT_THROW(truncated_critical_count(k3, 2, 0), DomainError);
  EXPECT_THROW(truncated_critical_count(k3, 2, 3), DomainError);
}

TEST(Acyclicity, Examples) {
  EXPECT_TRUE(verify_acyclic(lex_matching(worked_example_graph(), 5), worked_example_graph()));
  EXPECT_TRUE(verify_acyclic(Matching{}, Graph::complete(4)));
  Matching cyc;
  cyc.add(Simplex{1}, Simplex({1, 2}));
  cyc.add(Simplex{2}, Simplex({2, 3}));
  cyc.add(Simplex{3}, Simplex({1, 3}));
  EXPECT_FALSE(verify_acyclic(cyc, k3));
}

TEST(Acyclicity, LexMatchingOnRandomGraphs) {
  for (int r = 0; r < 200; ++r) {
    const Graph g = random_graph(10, 0.3 + 0.1 * (r % 5), 1000 + r);
    ASSERT_TRUE(verify_acyclic(lex_matching(g, 10), g));
  }
}

TEST(Acyclicity, RejectsPairsOutsideTheComplex) {
  Matching m;
  m.add(Simplex{2}, Simplex({1, 2}));
  EXPECT_THROW(verify_acyclic(m, Graph(3)), DomainError);
}

TEST(CriticalVertices, NoSmallerNeighbour) {
  EXPECT_EQ(critical_vertices(worked_example_graph()), std::vector<int>{1});
  for (int r = 0; r < 50; ++r) {
    const Graph g = random_graph(9, 0.25, 60 + r);
    const auto cv = critical_vertices(g);
    ASSERT_FALSE(cv.empty());
    EXPECT_EQ(cv.front(), 1);
    std::vector<int> want;
    for (int v = 1; v <= 9; ++v) {
      bool low = false;
      for (int u = 1; u < v; ++u) low = low || g.has_edge(u, v);
      if (!low) want.push_back(v);
    }
    EXPECT_EQ(cv, want);
  }
}
