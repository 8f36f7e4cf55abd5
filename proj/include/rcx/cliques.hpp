#ifndef RCX_CLIQUES_HPP
#define RCX_CLIQUES_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "rcx/errors.hpp"
#include "rcx/graph.hpp"
#include "rcx/simplex.hpp"

namespace rcx {

namespace detail {

inline bool any_bit(std::span<const Word> w) {
  for (Word x : w)
    if (x) return true;
  return false;
}

inline std::uint64_t popcount(std::span<const Word> w) {
  std::uint64_t c = 0;
  for (Word x : w) c += static_cast<std::uint64_t>(std::popcount(x));
  return c;
}

/// Bits with index > v-1, i.e. vertices with label > v, within word `wi`.
inline Word above_mask(int v, int wi) {
  const int first = v;  // bit index of vertex v+1
  const int lo = wi * 64;
  if (first <= lo) return ~Word{0};
  if (first >= lo + 64) return 0;
  return ~Word{0} << (first - lo);
}

/// Bits for vertices with label < v (bit indices 0..v-2) within word `wi`.
inline Word below_mask(int v, int wi) {
  const int end = v - 1;
  const int lo = wi * 64;
  if (end <= lo) return 0;
  if (end >= lo + 64) return ~Word{0};
  return (Word{1} << (end - lo)) - 1;
}

/// Ordered-extension clique search. Each clique is reached exactly once, by
/// extending with vertices larger than its current maximum drawn from the
/// intersection of the members' neighbour rows.
template <class Visit>
class CliqueWalker {
 public:
  CliqueWalker(const Graph& g, int max_size, Visit& visit)
      : g_(g), w_(g.words()), max_size_(max_size), visit_(visit),
        cand_(static_cast<std::size_t>(max_size + 1) * static_cast<std::size_t>(w_)),
        stack_(static_cast<std::size_t>(max_size)) {}

  /// Walks all cliques of size 1..max_size whose minimum is in [lo, hi].
  /// `visit(vertices, candidates)` is called for every clique; `candidates`
  /// are the common neighbours larger than the clique's maximum. Returning
  /// false from visit prunes the subtree.
  void run(int lo, int hi) {
    for (int v = lo; v <= hi; ++v) {
      stack_[0] = v;
      auto c = level(1);
      auto row = g_.row(v);
      for (int wi = 0; wi < w_; ++wi) c[static_cast<std::size_t>(wi)] = row[static_cast<std::size_t>(wi)] & above_mask(v, wi);
      descend(1);
    }
  }

 private:
  std::span<Word> level(int depth) {
    return {cand_.data() + static_cast<std::size_t>(depth) * static_cast<std::size_t>(w_),
            static_cast<std::size_t>(w_)};
  }

  void descend(int depth) {
    auto c = level(depth);
    if (!visit_(std::span<const int>(stack_.data(), static_cast<std::size_t>(depth)),
                std::span<const Word>(c.data(), c.size())))
      return;
    if (depth == max_size_) return;
    auto next = level(depth + 1);
    for (int wi = 0; wi < w_; ++wi) {
      Word bits = c[static_cast<std::size_t>(wi)];
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        const int u = wi * 64 + b + 1;
        stack_[static_cast<std::size_t>(depth)] = u;
        auto row = g_.row(u);
        for (int x = 0; x < w_; ++x) {
          const auto xs = static_cast<std::size_t>(x);
          next[xs] = c[xs] & row[xs] & above_mask(u, x);
        }
        descend(depth + 1);
      }
    }
  }

  const Graph& g_;
  int w_;
  int max_size_;
  Visit& visit_;
  std::vector<Word> cand_;
  std::vector<int> stack_;
};

}  // namespace detail

/// Calls visit(span<const int> vertices) for every clique of size 1..max_size,
/// in depth-first lexicographic order.
template <class F>
void for_each_clique(const Graph& g, int max_size, F&& visit) {
  if (max_size < 1) return;
  auto adapter = [&](std::span<const int> s, std::span<const Word>) {
    visit(s);
    return true;
  };
  detail::CliqueWalker<decltype(adapter)> walker(g, max_size, adapter);
  walker.run(1, g.order());
}

/// All k-cliques, lexicographic order.
inline std::vector<Simplex> cliques(const Graph& g, int k) {
  require(k >= 1 && k <= g.order(), "cliques: need 1 <= k <= n");
  std::vector<Simplex> out;
  auto visit = [&](std::span<const int> s, std::span<const Word>) {
    if (static_cast<int>(s.size()) == k) {
      out.push_back(Simplex::from_sorted(s));
      return false;
    }
    return true;
  };
  detail::CliqueWalker<decltype(visit)> walker(g, k, visit);
  walker.run(1, g.order());
  return out;
}

/// Clique counts for sizes 1..max_size (index 0 unused). The last level is
/// counted by popcount rather than enumerated.
inline std::vector<std::uint64_t> clique_counts(const Graph& g, int max_size) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_size) + 1, 0);
  if (max_size < 1) return counts;
  auto visit = [&](std::span<const int> s, std::span<const Word> cand) {
    const auto m = s.size();
    ++counts[m];
    if (static_cast<int>(m) + 1 == max_size) {
      counts[m + 1] += detail::popcount(cand);
      return false;
    }
    return static_cast<int>(m) < max_size;
  };
  detail::CliqueWalker<decltype(visit)> walker(g, max_size, visit);
  walker.run(1, g.order());
  return counts;
}

inline std::uint64_t clique_count(const Graph& g, int k) {
  require(k >= 1 && k <= g.order(), "clique_count: need 1 <= k <= n");
  return clique_counts(g, k)[static_cast<std::size_t>(k)];
}

namespace detail {

/// Number of k-subsets of `allowed` that are cliques of g.
inline std::uint64_t count_cliques_within(const Graph& g, std::span<const Word> allowed, int k) {
  const int w = g.words();
  if (k == 1) return popcount(allowed);
  std::uint64_t total = 0;
  std::vector<Word> cand(static_cast<std::size_t>(k) * static_cast<std::size_t>(w));
  auto lvl = [&](int d) {
    return std::span<Word>(cand.data() + static_cast<std::size_t>(d) * static_cast<std::size_t>(w),
                           static_cast<std::size_t>(w));
  };
  auto rec = [&](auto&& self, int depth, std::span<const Word> c) -> void {
    // depth = vertices chosen so far; c = admissible extensions.
    if (depth + 1 == k) {
      total += popcount(c);
      return;
    }
    auto next = lvl(depth);
    for (int wi = 0; wi < w; ++wi) {
      Word bits = c[static_cast<std::size_t>(wi)];
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        const int u = wi * 64 + b + 1;
        auto row = g.row(u);
        for (int x = 0; x < w; ++x) {
          const auto xs = static_cast<std::size_t>(x);
          next[xs] = c[xs] & row[xs] & above_mask(u, x);
        }
        self(self, depth + 1, std::span<const Word>(next.data(), next.size()));
      }
    }
  };
  rec(rec, 0, allowed);
  return total;
}

/// Common neighbours of every vertex of t, minus t itself.
inline std::vector<Word> link_vertices(const Graph& g, std::span<const int> t) {
  std::vector<Word> allowed(static_cast<std::size_t>(g.words()), ~Word{0});
  const int n = g.order();
  // Clear bits beyond vertex n.
  for (int wi = 0; wi < g.words(); ++wi) allowed[static_cast<std::size_t>(wi)] = below_mask(n + 1, wi);
  for (int v : t) {
    auto row = g.row(v);
    for (std::size_t x = 0; x < allowed.size(); ++x) allowed[x] &= row[x];
  }
  for (int v : t) allowed[static_cast<std::size_t>((v - 1) / 64)] &= ~(Word{1} << ((v - 1) % 64));
  return allowed;
}

}  // namespace detail

/// T^t_k: k-subsets s disjoint from t that are cliques and whose vertices are
/// all adjacent to every vertex of t. t need not itself be a clique.
inline std::uint64_t link_count(const Graph& g, const Simplex& t, int k) {
  require(k >= 1, "link_count: k must be >= 1");
  require(t.max() <= g.order(), "link_count: t has a vertex outside [n]");
  const auto allowed = detail::link_vertices(g, t.vertices());
  return detail::count_cliques_within(g, allowed, k);
}

/// Link counts T^t_1 .. T^t_max_size (index 0 unused) in one pass.
inline std::vector<std::uint64_t> link_counts(const Graph& g, const Simplex& t, int max_size) {
  require(t.max() <= g.order(), "link_counts: t has a vertex outside [n]");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_size) + 1, 0);
  if (max_size < 1) return counts;
  const auto allowed = detail::link_vertices(g, t.vertices());
  if (max_size == 1) {
    counts[1] = detail::popcount(allowed);
    return counts;
  }
  // Walk cliques of the subgraph induced on `allowed`.
  const int w = g.words();
  std::vector<Word> cand(static_cast<std::size_t>(max_size + 1) * static_cast<std::size_t>(w));
  auto lvl = [&](int d) {
    return std::span<Word>(cand.data() + static_cast<std::size_t>(d) * static_cast<std::size_t>(w),
                           static_cast<std::size_t>(w));
  };
  auto rec = [&](auto&& self, int depth, std::span<const Word> c) -> void {
    if (depth + 1 == max_size) {
      counts[static_cast<std::size_t>(depth + 1)] += detail::popcount(c);
      return;
    }
    auto next = lvl(depth);
    for (int wi = 0; wi < w; ++wi) {
      Word bits = c[static_cast<std::size_t>(wi)];
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        const int u = wi * 64 + b + 1;
        ++counts[static_cast<std::size_t>(depth + 1)];
        auto row = g.row(u);
        for (int x = 0; x < w; ++x) {
          const auto xs = static_cast<std::size_t>(x);
          next[xs] = c[xs] & row[xs] & detail::above_mask(u, x);
        }
        self(self, depth + 1, std::span<const Word>(next.data(), next.size()));
      }
    }
  };
  rec(rec, 0, allowed);
  return counts;
}

}  // namespace rcx

#endif  // RCX_CLIQUES_HPP
