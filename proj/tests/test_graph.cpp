#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "rcx/cliques.hpp"
#include "rcx/graph.hpp"
#include "rcx/numeric.hpp"
#include "rcx/rng.hpp"
#include "rcx/verify.hpp"

using namespace rcx;

namespace {

Graph worked() { return worked_example_graph(); }

Graph random_graph(int n, double p, std::uint64_t seed) {
  auto rng = SplitMix64::stream(seed, 0);
  return sample_gnp(n, p, rng);
}

// Link subcomplex built the long way: common neighbours of t, then k-cliques
// among them.
std::uint64_t link_by_construction(const Graph& g, const Simplex& t, int k) {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> keep;
  for (int v = 1; v <= g.order(); ++v) {
    if (t.contains(v)) continue;
    bool all = true;
    for (int u : t.vertices()) all = all && g.has_edge(u, v);
    if (all) keep.push_back(v);
  }
  if (keep.empty()) return 0;
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = a + 1; b < keep.size(); ++b)
      if (g.has_edge(keep[a], keep[b])) edges.emplace_back(static_cast<int>(a) + 1, static_cast<int>(b) + 1);
  const Graph sub = Graph::from_edges(static_cast<int>(keep.size()), edges);
  if (k > sub.order()) return 0;
  return clique_count(sub, k);
}

bool is_clique(const Graph& g, const Simplex& s) {
  const auto v = s.vertices();
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b)
      if (!g.has_edge(v[a], v[b])) return false;
  return true;
}

}  // namespace

TEST(Rng, SubstreamsAreDeterministicAndDistinct) {
  auto a = SplitMix64::stream(42, 3), b = SplitMix64::stream(42, 3), c = SplitMix64::stream(42, 4);
  const auto x = a(), y = b(), z = c();
  EXPECT_EQ(x, y);
  EXPECT_NE(x, z);
}

TEST(Rng, KnownFirstOutput) {
  // Reference SplitMix64 from seed 0.
  SplitMix64 r(0);
  EXPECT_EQ(r(), 0xE220A8397B1DCDAFULL);
}

TEST(Rng, UniformRange) {
  SplitMix64 r(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(SampleGnp, ExtremeProbabilities) {
  SplitMix64 r(1);
  EXPECT_EQ(sample_gnp(5, 0.0, r).edge_count(), 0u);
  EXPECT_EQ(sample_gnp(5, 1.0, r), Graph::complete(5));
}

TEST(SampleGnp, SameSeedSameGraph) {
  const GnpParams params{20, 0.5, 7};
  EXPECT_EQ(sample_gnp(params), sample_gnp(params));
  const GnpParams other{20, 0.3, 7};
  EXPECT_EQ(sample_gnp(other), sample_gnp(other));
}

TEST(SampleGnp, RejectsBadParameters) {
  EXPECT_THROW((GnpParams{0, 0.5, 1}), DomainError);
  EXPECT_THROW((GnpParams{3, 1.5, 1}), DomainError);
}

TEST(SampleGnp, EdgeFrequencyMatchesP) {
  for (double p : {0.2, 0.5}) {
    double edges = 0;
    const int reps = 4000, n = 70;
    for (int r = 0; r < reps; ++r) edges += static_cast<double>(random_graph(n, p, 100 + r).edge_count());
    const double pairs = num::pairs(n);
    const double mean = edges / reps / pairs;
    EXPECT_NEAR(mean, p, 5 * std::sqrt(p * (1 - p) / (pairs * reps))) << "p=" << p;
  }
}

TEST(SampleGnp, HalfProbabilityGraphsAreSymmetricAndLoopFree) {
  for (int n : {1, 2, 63, 64, 65, 129}) {
    const Graph g = random_graph(n, 0.5, 9);
    std::size_t degrees = 0;
    for (int v = 1; v <= n; ++v) {
      degrees += static_cast<std::size_t>(g.degree(v));
      const auto row = g.row(v);
      EXPECT_EQ((row[static_cast<std::size_t>((v - 1) / 64)] >> ((v - 1) % 64)) & 1U, 0U);
      for (int u = 1; u <= n; ++u) ASSERT_EQ(g.has_edge(u, v), g.has_edge(v, u));
    }
    EXPECT_EQ(degrees, 2 * g.edge_count());
  }
}

TEST(AllGraphs, Counts) {
  EXPECT_EQ(all_graphs(2).size(), 2u);
  EXPECT_EQ(all_graphs(3).size(), 8u);
  std::uint64_t seen = 0;
  for (auto it = all_graphs(3).begin(); it != all_graphs(3).end(); ++it) {
    EXPECT_EQ((*it).edge_mask(), it.mask());
    ++seen;
  }
  EXPECT_EQ(seen, 8u);
  EXPECT_THROW(all_graphs(7), CapExceeded);
}

TEST(GraphProbability, Examples) {
  const Graph empty(3);
  EXPECT_DOUBLE_EQ(graph_probability(empty, 0.5), 0.125);
  for (auto it = all_graphs(3).begin(); it != all_graphs(3).end(); ++it)
    EXPECT_DOUBLE_EQ(graph_probability(*it, 0.5), 0.125);
  const Graph two = Graph::from_edges(3, {{1, 2}, {2, 3}});
  EXPECT_NEAR(graph_probability(two, 0.3), 0.063, 1e-15);
}

TEST(GraphProbability, SumsToOne) {
  for (int n = 1; n <= 6; ++n)
    for (double p : {0.0, 0.13, 0.5, 0.9, 1.0}) {
      double s = 0.0;
      for (auto it = all_graphs(n).begin(); it != all_graphs(n).end(); ++it) s += graph_probability(*it, p);
      EXPECT_NEAR(s, 1.0, 1e-12) << "n=" << n << " p=" << p;
    }
}

TEST(Cliques, Examples) {
  EXPECT_EQ(cliques(Graph::complete(4), 3).size(), 4u);
  EXPECT_EQ(cliques(worked(), 3), std::vector<Simplex>{Simplex({3, 4, 5})});
  EXPECT_TRUE(cliques(Graph(4), 2).empty());
}

TEST(Cliques, LexicographicOrderAndValidity) {
  const Graph g = random_graph(12, 0.6, 3);
  for (int k = 1; k <= 5; ++k) {
    const auto cs = cliques(g, k);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      EXPECT_TRUE(is_clique(g, cs[i]));
      if (i) {
        EXPECT_LT(cs[i - 1], cs[i]);
      }
    }
    EXPECT_EQ(clique_count(g, k), cs.size());
  }
}

TEST(CliqueCount, Examples) {
  EXPECT_EQ(clique_count(worked(), 2), 6u);
  EXPECT_EQ(clique_count(Graph::complete(4), 3), 4u);
  EXPECT_EQ(clique_count(worked(), 4), 0u);
}

TEST(CliqueCount, ExtremeP) {
  for (int n = 2; n <= 9; ++n)
    for (int k = 1; k <= n; ++k) {
      EXPECT_EQ(clique_count(Graph::complete(n), k), static_cast<std::uint64_t>(num::binom(n, k)));
      if (k >= 2) {
        EXPECT_EQ(clique_count(Graph(n), k), 0u);
      }
    }
}

TEST(CliqueCount, MatchesBruteForceOnAllSmallGraphs) {
  for (auto it = all_graphs(5).begin(); it != all_graphs(5).end(); ++it) {
    const Graph g = *it;
    const auto counts = clique_counts(g, 5);
    for (int k = 1; k <= 5; ++k) {
      std::uint64_t brute = 0;
      for (unsigned mask = 1; mask < 32u; ++mask) {
        if (std::popcount(mask) != k) continue;
        std::vector<int> v;
        for (int b = 0; b < 5; ++b)
          if (mask >> b & 1U) v.push_back(b + 1);
        brute += is_clique(g, Simplex(v));
      }
      ASSERT_EQ(counts[static_cast<std::size_t>(k)], brute);
    }
  }
}

TEST(LinkCount, Examples) {
  EXPECT_EQ(link_count(worked(), Simplex{3}, 1), 3u);
  EXPECT_EQ(link_count(worked(), Simplex{3}, 2), 1u);
  EXPECT_EQ(link_count(Graph(4), Simplex({1, 3}), 1), 0u);
}

TEST(LinkCount, NonCliqueTIsEvaluatedAsWritten) {
  // t = {1,2} is not an edge; vertex 3 is joined to both.
  const Graph g = Graph::from_edges(4, {{1, 3}, {2, 3}, {3, 4}});
  EXPECT_EQ(link_count(g, Simplex({1, 2}), 1), 1u);
  EXPECT_EQ(link_count(g, Simplex({1, 2}), 2), 0u);
}

TEST(LinkCount, AgreesWithLinkConstructionOnAllSmallGraphs) {
  for (auto it = all_graphs(5).begin(); it != all_graphs(5).end(); ++it) {
    const Graph g = *it;
    for (const auto& t : {Simplex{1}, Simplex{3}, Simplex({1, 2}), Simplex({2, 4}), Simplex({1, 3, 5})}) {
      if (!is_clique(g, t)) continue;
      for (int k = 1; k <= 5 - t.size(); ++k) ASSERT_EQ(link_count(g, t, k), link_by_construction(g, t, k));
    }
  }
}

TEST(LinkCount, AgreesWithLinkConstructionOnRandomGraphs) {
  for (int r = 0; r < 200; ++r) {
    const Graph g = random_graph(12, 0.3 + 0.4 * (r % 2), 500 + r);
    for (const auto& t : {Simplex{1}, Simplex{7}, Simplex({2, 5})}) {
      if (!is_clique(g, t)) continue;
      for (int k = 1; k <= 4; ++k) ASSERT_EQ(link_count(g, t, k), link_by_construction(g, t, k));
    }
  }
}

TEST(GraphIo, RoundTrip) {
  const Graph g = random_graph(9, 0.5, 4);
  std::ostringstream os;
  write_graph(os, g);
  EXPECT_EQ(parse_graph(os.str()), g);
  EXPECT_THROW(parse_graph("3\n1 2\n1"), DomainError);
  EXPECT_THROW(parse_graph("3\n1 4\n"), DomainError);
  EXPECT_THROW(parse_graph("3\n2 2\n"), DomainError);
}
