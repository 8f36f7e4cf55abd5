#ifndef RCX_GRAPH_HPP
#define RCX_GRAPH_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rcx/errors.hpp"
#include "rcx/rng.hpp"

namespace rcx {

using Word = std::uint64_t;

/// Parameters of the Erdos-Renyi model G(n, p).
struct GnpParams {
  int n = 1;
  double p = 0.5;
  std::uint64_t seed = 0;

  GnpParams() = default;
  GnpParams(int n_, double p_, std::uint64_t seed_ = 0) : n(n_), p(p_), seed(seed_) {
    require(n >= 1, "G(n,p): n must be >= 1");
    require(p >= 0.0 && p <= 1.0, "G(n,p): p must lie in [0,1]");
  }
};

/// Simple undirected graph on vertices 1..n. Adjacency is held as one n-bit
/// row per vertex (bit u-1 of row v set iff {u,v} is an edge), so clique
/// extension is a word-wise AND. Immutable once built.
class Graph {
 public:
  explicit Graph(int n) : n_(n), words_((n + 63) / 64) {
    require(n >= 1, "graph needs at least one vertex");
    rows_.assign(static_cast<std::size_t>(n_) * words_, 0);
  }

  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges) {
    Graph g(n);
    for (auto [i, j] : edges) {
      require(i >= 1 && j >= 1 && i <= n && j <= n, "edge endpoint out of range");
      require(i != j, "self-loops are not allowed");
      g.set_edge(i, j);
    }
    return g;
  }

  static Graph from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
    return from_edges(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
  }

  static Graph complete(int n) {
    Graph g(n);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) g.set_edge(i, j);
    return g;
  }

  /// Number of unordered pairs, C(n, 2).
  static constexpr std::size_t pair_count(int n) {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  }

  /// Position of pair {i,j}, i < j, in lexicographic pair order
  /// (1,2), (1,3), ..., (1,n), (2,3), ...
  static constexpr std::size_t pair_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    const std::size_t a = static_cast<std::size_t>(i - 1);
    return a * static_cast<std::size_t>(n) - a * (a + 1) / 2 + static_cast<std::size_t>(j - i - 1);
  }

  /// Graph whose edge set is the bit pattern `mask` over lexicographic pair
  /// order. Requires C(n,2) <= 64.
  static Graph from_edge_mask(int n, std::uint64_t mask) {
    require(pair_count(n) <= 64, "edge mask representation needs C(n,2) <= 64");
    Graph g(n);
    std::size_t b = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j, ++b)
        if ((mask >> b) & 1U) g.set_edge(i, j);
    return g;
  }

  std::uint64_t edge_mask() const {
    require(pair_count(n_) <= 64, "edge mask representation needs C(n,2) <= 64");
    std::uint64_t mask = 0;
    std::size_t b = 0;
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j, ++b)
        if (has_edge(i, j)) mask |= std::uint64_t{1} << b;
    return mask;
  }

  int order() const noexcept { return n_; }
  int words() const noexcept { return words_; }

  bool has_edge(int i, int j) const {
    if (i == j) return false;
    const Word w = rows_[row_offset(i) + static_cast<std::size_t>((j - 1) / 64)];
    return (w >> ((j - 1) % 64)) & 1U;
  }

  /// Neighbour bitset of vertex v.
  std::span<const Word> row(int v) const {
    return {rows_.data() + row_offset(v), static_cast<std::size_t>(words_)};
  }

  int degree(int v) const {
    int d = 0;
    for (Word w : row(v)) d += std::popcount(w);
    return d;
  }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (Word w : rows_) twice += static_cast<std::size_t>(std::popcount(w));
    return twice / 2;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j)
        if (has_edge(i, j)) out.emplace_back(i, j);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph sample_gnp(const GnpParams&);
  template <class Rng>
  friend Graph sample_gnp(int, double, Rng&);

  std::size_t row_offset(int v) const {
    return static_cast<std::size_t>(v - 1) * static_cast<std::size_t>(words_);
  }

  void set_edge(int i, int j) {
    rows_[row_offset(i) + static_cast<std::size_t>((j - 1) / 64)] |= Word{1} << ((j - 1) % 64);
    rows_[row_offset(j) + static_cast<std::size_t>((i - 1) / 64)] |= Word{1} << ((i - 1) % 64);
  }

  int n_;
  int words_;
  std::vector<Word> rows_;
};

/// Draws G(n,p) from `rng`: one uniform per pair, in lexicographic pair order.
/// At p = 1/2 each pair instead takes one bit of a 64-bit draw; row i's
/// pairs {i, j > i} come from consecutive words, low bit first.
template <class Rng>
Graph sample_gnp(int n, double p, Rng& rng) {
  Graph g(n);
  if (p <= 0.0) return g;
  if (p >= 1.0) return Graph::complete(n);
  if (p == 0.5) {
    for (int i = 1; i < n; ++i)
      for (int w = i / 64; w < g.words_; ++w) {
        Word bits = rng();
        if (w == i / 64) bits &= ~Word{0} << (i % 64);
        if (w == g.words_ - 1 && n % 64) bits &= (Word{1} << (n % 64)) - 1;
        g.rows_[g.row_offset(i) + static_cast<std::size_t>(w)] |= bits;
        for (Word b = bits; b; b &= b - 1) {
          const int j = w * 64 + std::countr_zero(b) + 1;
          g.rows_[g.row_offset(j) + static_cast<std::size_t>((i - 1) / 64)] |= Word{1} << ((i - 1) % 64);
        }
      }
    return g;
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (rng.bernoulli(p)) g.set_edge(i, j);
  return g;
}

inline Graph sample_gnp(const GnpParams& params) {
  SplitMix64 rng(params.seed);
  return sample_gnp(params.n, params.p, rng);
}

inline constexpr int kMaxExhaustiveVertices = 6;

/// Every labelled graph on n <= 6 vertices, in edge-bitmask order.
class AllGraphs {
 public:
  explicit AllGraphs(int n) : n_(n) {
    require(n >= 1, "all_graphs: n must be >= 1");
    if (n > kMaxExhaustiveVertices)
      throw CapExceeded("all_graphs: exhaustive enumeration is capped at n = " +
                        std::to_string(kMaxExhaustiveVertices));
  }

  std::uint64_t size() const { return std::uint64_t{1} << Graph::pair_count(n_); }
  int vertices() const { return n_; }

  class iterator {
   public:
    using value_type = Graph;
    using difference_type = std::ptrdiff_t;
    iterator(int n, std::uint64_t mask) : n_(n), mask_(mask) {}
    Graph operator*() const { return Graph::from_edge_mask(n_, mask_); }
    std::uint64_t mask() const { return mask_; }
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    bool operator==(const iterator& o) const { return mask_ == o.mask_; }

   private:
    int n_;
    std::uint64_t mask_;
  };

  iterator begin() const { return {n_, 0}; }
  iterator end() const { return {n_, size()}; }

 private:
  int n_;
};

inline AllGraphs all_graphs(int n) { return AllGraphs(n); }

/// p^{#edges} (1-p)^{C(n,2) - #edges}, evaluated in log space.
inline double graph_probability(const Graph& g, double p) {
  require(p >= 0.0 && p <= 1.0, "graph_probability: p must lie in [0,1]");
  const double e = static_cast<double>(g.edge_count());
  const double non = static_cast<double>(Graph::pair_count(g.order())) - e;
  if ((p == 0.0 && e > 0) || (p == 1.0 && non > 0)) return 0.0;
  double logw = 0.0;
  if (e > 0) logw += e * std::log(p);
  if (non > 0) logw += non * std::log1p(-p);
  return std::exp(logw);
}

/// Text fixture format: first line "n", then one "i j" line per edge.
inline Graph read_graph(std::istream& in) {
  int n = 0;
  if (!(in >> n)) throw DomainError("graph file: missing vertex count");
  std::vector<int> ends;
  int v = 0;
  while (in >> v) ends.push_back(v);
  if (!in.eof() || ends.size() % 2) throw DomainError("graph file: malformed edge line");
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < ends.size(); i += 2) edges.emplace_back(ends[i], ends[i + 1]);
  return Graph::from_edges(n, edges);
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.order() << '\n';
  for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

}  // namespace rcx

#endif  // RCX_GRAPH_HPP
