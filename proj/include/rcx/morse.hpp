#ifndef RCX_MORSE_HPP
#define RCX_MORSE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rcx/cliques.hpp"
#include "rcx/errors.hpp"
#include "rcx/graph.hpp"
#include "rcx/simplex.hpp"

namespace rcx {

/// A partial matching: pairs (face, coface) with face a codimension-one face
/// of coface, every simplex used at most once.
class Matching {
 public:
  using Pair = std::pair<Simplex, Simplex>;

  void add(Simplex face, Simplex coface) {
    require(coface.size() == face.size() + 1 && face.is_face_of(coface),
            "matching pair must be (face, coface) with codimension one");
    require(!used_.contains(face) && !used_.contains(coface),
            "simplex already appears in the matching");
    used_.insert(face);
    used_.insert(coface);
    pairs_.emplace_back(std::move(face), std::move(coface));
    sorted_ = false;
  }

  bool contains(const Simplex& s) const { return used_.contains(s); }
  bool has_pair(const Simplex& face, const Simplex& coface) const {
    auto it = partner_lookup(face);
    return it && *it == coface;
  }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }

  /// Pairs ordered by face: size ascending, then lexicographic.
  const std::vector<Pair>& pairs() const {
    if (!sorted_) {
      std::sort(pairs_.begin(), pairs_.end(), [](const Pair& a, const Pair& b) {
        return BySizeThenLex{}(a.first, b.first);
      });
      sorted_ = true;
    }
    return pairs_;
  }

  int max_coface_size() const {
    int m = 0;
    for (const auto& [f, c] : pairs_) m = std::max(m, c.size());
    return m;
  }

  /// One "face -> coface" line per pair.
  void dump(std::ostream& os) const {
    for (const auto& [f, c] : pairs()) os << f.to_string() << " -> " << c.to_string() << '\n';
  }

  friend bool operator==(const Matching& a, const Matching& b) { return a.pairs() == b.pairs(); }

 private:
  const Simplex* partner_lookup(const Simplex& face) const {
    for (const auto& [f, c] : pairs_)
      if (f == face) return &c;
    return nullptr;
  }

  mutable std::vector<Pair> pairs_;
  mutable bool sorted_ = true;
  std::set<Simplex> used_;
};

/// Critical simplex counts for sizes 2..d+1 (dimensions 1..d).
struct CriticalVector {
  std::vector<std::int64_t> counts;  // counts[i-1] is dimension i, size i+1

  int dimensions() const { return static_cast<int>(counts.size()); }
  std::int64_t of_size(int size) const { return counts.at(static_cast<std::size_t>(size - 2)); }
  friend bool operator==(const CriticalVector&, const CriticalVector&) = default;
};

namespace detail {

/// Vertices below `min_label` adjacent to every vertex in `s`, written into
/// `out` (ceil((min_label-1)/64) words).
inline void low_common_neighbours(const Graph& g, std::span<const int> s, int min_label,
                                  std::vector<Word>& out) {
  const int low_words = (min_label - 1 + 63) / 64;
  out.assign(static_cast<std::size_t>(low_words), 0);
  for (int wi = 0; wi < low_words; ++wi) out[static_cast<std::size_t>(wi)] = below_mask(min_label, wi);
  for (int v : s) {
    auto row = g.row(v);
    for (int wi = 0; wi < low_words; ++wi) out[static_cast<std::size_t>(wi)] &= row[static_cast<std::size_t>(wi)];
  }
}

inline int lowest_vertex(std::span<const Word> w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i]) return static_cast<int>(i) * 64 + std::countr_zero(w[i]) + 1;
  return 0;
}

/// Evaluates the product-indicator sum for critical simplices over cliques
/// with size in [2, max_size] and minimum in [1, max_min]. Adds into
/// totals[size].
inline void critical_indicator_sums(const Graph& g, int max_size, int max_min,
                                    std::vector<std::int64_t>& totals) {
  totals.assign(static_cast<std::size_t>(max_size) + 1, 0);
  if (max_size < 2 || max_min < 1) return;
  std::vector<Word> plus, minus;
  auto visit = [&](std::span<const int> s, std::span<const Word>) {
    const int m = static_cast<int>(s.size());
    if (m < 2) return true;
    const int a = s.front();
    // Y+ : no i < min(s) adjacent to all of s.
    low_common_neighbours(g, s, a, plus);
    const int y_plus = any_bit(plus) ? 0 : 1;
    // Y- : no i < min(s) adjacent to all of s minus its minimum.
    low_common_neighbours(g, s.subspan(1), a, minus);
    const int y_minus = any_bit(minus) ? 0 : 1;
    totals[static_cast<std::size_t>(m)] += y_plus - y_minus;
    return true;
  };
  CliqueWalker<decltype(visit)> walker(g, max_size, visit);
  walker.run(1, std::min(max_min, g.order()));
}

}  // namespace detail

/// Lexicographical matching: each clique s of size <= max_size with
/// I(s) = { j < min(s) : s + j is a clique } nonempty is paired with
/// s + min I(s).
inline Matching lex_matching(const Graph& g, int max_size) {
  require(max_size >= 1 && max_size <= g.order(), "lex_matching: need 1 <= max_size <= n");
  Matching m;
  std::vector<Word> low;
  for_each_clique(g, max_size, [&](std::span<const int> s) {
    detail::low_common_neighbours(g, s, s.front(), low);
    const int j = detail::lowest_vertex(low);
    if (j == 0) return;
    std::vector<int> co(s.begin(), s.end());
    co.insert(co.begin(), j);
    m.add(Simplex::from_sorted(s), Simplex::from_sorted(co));
  });
  return m;
}

/// Counts cliques of sizes 2..d+1 that appear in no pair of the
/// lexicographical matching. The matching is built one size beyond the
/// reporting cap (capped at n) so that upward matches of the top size exist.
inline CriticalVector critical_counts_direct(const Graph& g, int d) {
  require(d >= 1 && d + 1 <= g.order(), "critical_counts_direct: need 1 <= d and d+1 <= n");
  const Matching m = lex_matching(g, std::min(d + 2, g.order()));
  CriticalVector out;
  out.counts.assign(static_cast<std::size_t>(d), 0);
  for_each_clique(g, d + 1, [&](std::span<const int> s) {
    if (s.size() < 2) return;
    if (!m.contains(Simplex::from_sorted(s))) ++out.counts[s.size() - 2];
  });
  return out;
}

/// Critical counts for sizes 2..d+1 via the edge-indicator product formula.
inline CriticalVector critical_counts_formula(const Graph& g, int d) {
  require(d >= 1 && d + 1 <= g.order(), "critical_counts_formula: need 1 <= d and d+1 <= n");
  std::vector<std::int64_t> totals;
  detail::critical_indicator_sums(g, d + 1, g.order(), totals);
  CriticalVector out;
  out.counts.assign(totals.begin() + 2, totals.end());
  return out;
}

/// T^K_k: the formula restricted to size-k simplices with min(s) <= K.
inline std::int64_t truncated_critical_count(const Graph& g, int k, int K) {
  require(k >= 1 && k <= g.order(), "truncated_critical_count: need 1 <= k <= n");
  require(K >= 1 && K <= g.order() - k + 1, "truncated_critical_count: need 1 <= K <= n-k+1");
  if (k < 2) return 0;
  std::vector<std::int64_t> totals;
  detail::critical_indicator_sums(g, k, K, totals);
  return totals[static_cast<std::size_t>(k)];
}

/// Vertices unmatched by the lexicographical matching: those with no
/// neighbour of smaller label. Vertex 1 is always among them. Not part of
/// CriticalVector, whose formula only covers sizes >= 2.
inline std::vector<int> critical_vertices(const Graph& g) {
  std::vector<int> out;
  std::vector<Word> low;
  for (int v = 1; v <= g.order(); ++v) {
    const int s[1] = {v};
    detail::low_common_neighbours(g, s, v, low);
    if (!detail::any_bit(low)) out.push_back(v);
  }
  return out;
}

/// True iff the matching admits no closed Sigma-path. Builds the Hasse
/// diagram of the clique complex up to the largest matched coface, directs
/// matched pairs upward and all other face relations downward, and searches
/// for a directed cycle. Test-scale only.
inline bool verify_acyclic(const Matching& m, const Graph& g) {
  const int top = std::max(1, m.max_coface_size());
  std::map<Simplex, int> id;
  std::vector<Simplex> nodes;
  for_each_clique(g, top, [&](std::span<const int> s) {
    id.emplace(Simplex::from_sorted(s), static_cast<int>(nodes.size()));
    nodes.push_back(Simplex::from_sorted(s));
  });
  for (const auto& [f, c] : m.pairs())
    require(id.contains(f) && id.contains(c), "verify_acyclic: matched simplex is not a clique of g");

  std::vector<std::vector<int>> out(nodes.size());
  for (std::size_t t = 0; t < nodes.size(); ++t) {
    const Simplex& cof = nodes[t];
    if (cof.size() < 2) continue;
    for (int drop = 0; drop < cof.size(); ++drop) {
      std::vector<int> fv;
      for (int i = 0; i < cof.size(); ++i)
        if (i != drop) fv.push_back(cof[i]);
      const Simplex face = Simplex::from_sorted(fv);
      const int f = id.at(face);
      if (m.has_pair(face, cof))
        out[static_cast<std::size_t>(f)].push_back(static_cast<int>(t));
      else
        out[t].push_back(f);
    }
  }

  // Iterative three-colour DFS.
  enum : unsigned char { kWhite, kGrey, kBlack };
  std::vector<unsigned char> colour(nodes.size(), kWhite);
  std::vector<std::pair<int, std::size_t>> stack;
  for (std::size_t root = 0; root < nodes.size(); ++root) {
    if (colour[root] != kWhite) continue;
    stack.emplace_back(static_cast<int>(root), 0);
    colour[root] = kGrey;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& adj = out[static_cast<std::size_t>(v)];
      if (next < adj.size()) {
        const int u = adj[next++];
        if (colour[static_cast<std::size_t>(u)] == kGrey) return false;
        if (colour[static_cast<std::size_t>(u)] == kWhite) {
          colour[static_cast<std::size_t>(u)] = kGrey;
          stack.emplace_back(u, 0);
        }
      } else {
        colour[static_cast<std::size_t>(v)] = kBlack;
        stack.pop_back();
      }
    }
  }
  return true;
}

}  // namespace rcx

#endif  // RCX_MORSE_HPP
