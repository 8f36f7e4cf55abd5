#ifndef RCX_STATISTIC_HPP
#define RCX_STATISTIC_HPP

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcx/cliques.hpp"
#include "rcx/errors.hpp"
#include "rcx/graph.hpp"
#include "rcx/morse.hpp"
#include "rcx/simplex.hpp"

namespace rcx {

enum class StatisticKind { critical, link, clique };

inline std::string_view to_string(StatisticKind k) {
  switch (k) {
    case StatisticKind::critical: return "critical";
    case StatisticKind::link: return "link";
    case StatisticKind::clique: return "clique";
  }
  return "?";
}

inline StatisticKind parse_kind(std::string_view s) {
  if (s == "critical") return StatisticKind::critical;
  if (s == "link") return StatisticKind::link;
  if (s == "clique") return StatisticKind::clique;
  throw DomainError("unknown statistic kind '" + std::string(s) + "'");
}

/// Which count vector to read off a graph.
///   critical: critical simplex counts, sizes 2..d+1
///   clique:   clique counts, sizes 2..d+1
///   link:     T^t_1 .. T^t_d for the fixed set t
struct StatisticSpec {
  StatisticKind kind = StatisticKind::clique;
  int n = 1;
  int d = 1;
  Simplex t{1};

  static StatisticSpec critical(int n, int d) { return make(StatisticKind::critical, n, d, Simplex{1}); }
  static StatisticSpec clique(int n, int d) { return make(StatisticKind::clique, n, d, Simplex{1}); }
  static StatisticSpec link(int n, int d, Simplex t) { return make(StatisticKind::link, n, d, std::move(t)); }

  /// t = {1, ..., t_size}.
  static StatisticSpec link(int n, int d, int t_size) {
    require(t_size >= 1, "link: t_size must be >= 1");
    std::vector<int> v(static_cast<std::size_t>(t_size));
    std::iota(v.begin(), v.end(), 1);
    return link(n, d, Simplex(std::move(v)));
  }

  int t_size() const { return t.size(); }

  /// Simplex size counted by component c (0-based).
  int component_size(int c) const { return kind == StatisticKind::link ? c + 1 : c + 2; }

  std::vector<std::string> raw_names() const {
    std::vector<std::string> out;
    for (int c = 0; c < d; ++c) out.push_back("T" + std::to_string(component_size(c)));
    return out;
  }

  void validate() const {
    require(n >= 1, "n must be >= 1");
    require(d >= 1, "d must be >= 1");
    if (kind == StatisticKind::link) {
      require(t.max() <= n, "link: t has a vertex outside [n]");
      require(d <= n - t.size(), "link: need d <= n - t_size");
    } else {
      require(d + 1 <= n, std::string(to_string(kind)) + ": need d + 1 <= n");
    }
  }

 private:
  static StatisticSpec make(StatisticKind kind, int n, int d, Simplex t) {
    StatisticSpec s;
    s.kind = kind;
    s.n = n;
    s.d = d;
    s.t = std::move(t);
    s.validate();
    return s;
  }
};

/// The d-component count vector of `g` under `spec`.
inline std::vector<std::int64_t> count_vector(const Graph& g, const StatisticSpec& spec) {
  require(g.order() == spec.n, "count_vector: graph order does not match spec.n");
  std::vector<std::int64_t> out(static_cast<std::size_t>(spec.d));
  switch (spec.kind) {
    case StatisticKind::critical: {
      std::vector<std::int64_t> totals;
      detail::critical_indicator_sums(g, spec.d + 1, g.order(), totals);
      for (int c = 0; c < spec.d; ++c) out[static_cast<std::size_t>(c)] = totals[static_cast<std::size_t>(c + 2)];
      break;
    }
    case StatisticKind::clique: {
      const auto counts = clique_counts(g, spec.d + 1);
      for (int c = 0; c < spec.d; ++c)
        out[static_cast<std::size_t>(c)] = static_cast<std::int64_t>(counts[static_cast<std::size_t>(c + 2)]);
      break;
    }
    case StatisticKind::link: {
      const auto counts = link_counts(g, spec.t, spec.d);
      for (int c = 0; c < spec.d; ++c)
        out[static_cast<std::size_t>(c)] = static_cast<std::int64_t>(counts[static_cast<std::size_t>(c + 1)]);
      break;
    }
  }
  return out;
}

}  // namespace rcx

#endif  // RCX_STATISTIC_HPP
