#ifndef RCX_VERIFY_HPP
#define RCX_VERIFY_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "rcx/covariance.hpp"
#include "rcx/graph.hpp"
#include "rcx/moments.hpp"
#include "rcx/monte_carlo.hpp"
#include "rcx/morse.hpp"
#include "rcx/numeric.hpp"
#include "rcx/oracle.hpp"
#include "rcx/pipeline.hpp"
#include "rcx/stein.hpp"

namespace rcx {

struct Gate {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<Gate> gates;
  double seconds = 0.0;

  bool ok() const {
    for (const auto& g : gates)
      if (g.verdict == Verdict::fail) return false;
    return true;
  }

  std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& g : gates) f += g.verdict == Verdict::fail;
    return f;
  }

  void add(std::string name, bool ok, std::string detail = {}) {
    gates.push_back({std::move(name), ok ? Verdict::pass : Verdict::fail, std::move(detail)});
  }

  Json to_json(bool with_timing = false) const {
    Json j;
    j["suite"] = suite;
    j["ok"] = ok();
    if (with_timing) j["seconds"] = seconds;
    Json a = Json::array();
    for (const auto& g : gates)
      a.push_back({{"name", g.name}, {"verdict", std::string(to_string(g.verdict))}, {"detail", g.detail}});
    j["gates"] = std::move(a);
    return j;
  }
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

inline constexpr double kOracleRel = 1e-10;
inline constexpr double kOracleAbs = 1e-13;

inline bool oracle_close(double a, double b) { return num::close_rel(a, b, kOracleRel, kOracleAbs); }

}  // namespace detail

/// Analytic moments against exhaustive enumeration.
inline SuiteResult verify_oracle(int n_max = 5, int d_max = 3, std::vector<double> ps = {0.2, 0.5, 0.8}) {
  SuiteResult out;
  out.suite = "oracle";
  detail::Stopwatch sw;
  for (int n = 2; n <= n_max; ++n)
    for (double p : ps) {
      // Critical: mean and variance per component.
      const int dc = std::min(d_max, n - 1);
      if (dc >= 1) {
        const auto spec = StatisticSpec::critical(n, dc);
        const MomentReport ex = exact_moments(spec, p);
        for (int a = 0; a < dc; ++a) {
          const double m = crit_mean(n, a + 1, p), v = crit_variance(n, a + 1, p);
          const std::string tag = "critical n=" + std::to_string(n) + " k=" + std::to_string(a + 1) +
                                  " p=" + detail::fmt(p);
          out.add(tag + " mean", detail::oracle_close(m, ex.mean(a)),
                  detail::fmt(m) + " vs " + detail::fmt(ex.mean(a)));
          out.add(tag + " variance", detail::oracle_close(v, ex.cov(a, a)),
                  detail::fmt(v) + " vs " + detail::fmt(ex.cov(a, a)));
        }
      }
      auto full_matrix = [&](const StatisticSpec& spec, const std::string& tag) {
        const MomentReport an = statistic_cov_matrix(spec, p);
        const MomentReport ex = exact_moments(spec, p);
        bool ok = true;
        double worst = 0.0;
        for (int a = 0; a < spec.d; ++a) {
          ok = ok && detail::oracle_close(an.mean(a), ex.mean(a));
          worst = std::max(worst, std::fabs(an.mean(a) - ex.mean(a)));
          for (int b = 0; b < spec.d; ++b) {
            ok = ok && detail::oracle_close(an.cov(a, b), ex.cov(a, b));
            worst = std::max(worst, std::fabs(an.cov(a, b) - ex.cov(a, b)));
          }
        }
        out.add(tag, ok, "max abs difference " + detail::fmt(worst));
      };
      if (dc >= 1)
        full_matrix(StatisticSpec::clique(n, dc), "clique n=" + std::to_string(n) + " d=" + std::to_string(dc) +
                                                      " p=" + detail::fmt(p));
      for (int ts = 1; ts <= 2 && ts < n; ++ts) {
        const int dl = std::min(d_max, n - ts);
        full_matrix(StatisticSpec::link(n, dl, ts), "link n=" + std::to_string(n) + " t_size=" +
                                                        std::to_string(ts) + " d=" + std::to_string(dl) +
                                                        " p=" + detail::fmt(p));
      }
    }
  out.seconds = sw.seconds();
  return out;
}

/// Graphs used by the Morse suites: every graph on 5 and 6 vertices, then
/// `random_graphs` seeded draws on `random_n` vertices with p cycling through
/// 0.2, 0.5, 0.8.
template <class F>
void for_each_morse_graph(int random_graphs, int random_n, std::uint64_t seed, F&& f) {
  for (int n : {5, 6})
    for (auto it = all_graphs(n).begin(), end = all_graphs(n).end(); it != end; ++it) f(*it);
  const double ps[] = {0.2, 0.5, 0.8};
  for (int r = 0; r < random_graphs; ++r) {
    auto rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(r));
    f(sample_gnp(random_n, ps[r % 3], rng));
  }
}

inline SuiteResult verify_morse_equivalence(int random_graphs = 1000, int random_n = 12, std::uint64_t seed = 1,
                                            int d_max = 3) {
  SuiteResult out;
  out.suite = "morse-equivalence";
  detail::Stopwatch sw;
  std::uint64_t checked = 0, mismatched = 0;
  std::string first_bad;
  for_each_morse_graph(random_graphs, random_n, seed, [&](const Graph& g) {
    for (int d = 1; d <= std::min(d_max, g.order() - 1); ++d) {
      ++checked;
      if (critical_counts_direct(g, d) != critical_counts_formula(g, d)) {
        if (mismatched++ == 0) {
          std::ostringstream os;
          write_graph(os, g);
          first_bad = "d=" + std::to_string(d) + " graph: " + os.str();
        }
      }
    }
  });
  out.add("direct == formula", mismatched == 0,
          std::to_string(checked) + " (graph, d) cases, " + std::to_string(mismatched) + " mismatches" +
              (first_bad.empty() ? "" : "; first: " + first_bad));
  out.seconds = sw.seconds();
  return out;
}

inline SuiteResult verify_acyclicity(int random_graphs = 1000, int random_n = 12, std::uint64_t seed = 1) {
  SuiteResult out;
  out.suite = "acyclicity";
  detail::Stopwatch sw;
  std::uint64_t checked = 0, cyclic = 0;
  for_each_morse_graph(random_graphs, random_n, seed, [&](const Graph& g) {
    ++checked;
    if (!verify_acyclic(lex_matching(g, g.order()), g)) ++cyclic;
  });
  out.add("lexicographical matching is acyclic", cyclic == 0,
          std::to_string(checked) + " graphs, " + std::to_string(cyclic) + " with a closed path");
  out.seconds = sw.seconds();
  return out;
}

inline Graph worked_example_graph() { return Graph::from_edges(5, {{1, 2}, {2, 3}, {1, 4}, {3, 4}, {3, 5}, {4, 5}}); }

inline SuiteResult verify_worked_example() {
  SuiteResult out;
  out.suite = "worked-example";
  detail::Stopwatch sw;
  const Graph g = worked_example_graph();
  const Matching m = lex_matching(g, 3);
  std::ostringstream dump;
  m.dump(dump);
  const std::string expected = "2 -> 1,2\n3 -> 2,3\n4 -> 1,4\n5 -> 3,5\n4,5 -> 3,4,5\n";
  out.add("matching has the five expected pairs", dump.str() == expected, dump.str());

  std::vector<Simplex> critical;
  for (int v : critical_vertices(g)) critical.push_back(Simplex{v});
  for_each_clique(g, 3, [&](std::span<const int> s) {
    const Simplex x = Simplex::from_sorted(s);
    if (s.size() >= 2 && !m.contains(x)) critical.push_back(x);
  });
  std::ostringstream cs;
  for (const auto& s : critical) cs << s;
  out.add("critical simplices are {1} and {3,4}",
          critical == std::vector<Simplex>{Simplex{1}, Simplex{3, 4}}, cs.str());
  const CriticalVector direct = critical_counts_direct(g, 2), formula = critical_counts_formula(g, 2);
  out.add("critical counts (1, 0) by both methods",
          direct.counts == std::vector<std::int64_t>{1, 0} && formula == direct);
  out.add("matching is acyclic", verify_acyclic(m, g));
  out.seconds = sw.seconds();
  return out;
}

inline SuiteResult verify_spot_values() {
  SuiteResult out;
  out.suite = "spot-values";
  const double cb = clique_constant(1, 0.5);
  out.add("clique_bound(d=1, p=0.5) = 32/3", std::fabs(cb - 32.0 / 3.0) <= 1e-12, detail::fmt(cb));
  const double cc = convex_bound(1, 1.0).value;
  const double want = std::pow(2.0, 3.5) * std::pow(3.0, -0.75);
  out.add("convex constant at (d=1, B=1)", std::fabs(cc - want) <= 1e-12, detail::fmt(cc));
  return out;
}

struct RateOptions {
  int replicates = 100000;
  std::uint64_t seed = 2024;
  int threads = 1;
};

inline DiscrepancyReport smooth_at(StatisticSpec spec, double p, const RateOptions& o) {
  MCConfig cfg;
  cfg.stat = std::move(spec);
  cfg.p = p;
  cfg.replicates = o.replicates;
  cfg.master_seed = o.seed;
  cfg.threads = o.threads;
  PipelineOptions po;
  po.with_bounds = false;
  po.convex.quantiles = 0;
  po.convex.halfspaces = 0;
  return run_pipeline(cfg, po).smooth;
}

inline std::string describe(const DiscrepancyReport& r) {
  return detail::fmt(r.estimate) + " +- " + detail::fmt(r.stderr_);
}

/// Clique vector (d=2, p=0.5): smooth discrepancy at n=80 is at most 0.75 of
/// that at n=40, at 3-stderr confidence.
inline SuiteResult verify_clique_rate(const RateOptions& o = {}) {
  SuiteResult out;
  out.suite = "rate-clique";
  detail::Stopwatch sw;
  const auto a = smooth_at(StatisticSpec::clique(40, 2), 0.5, o);
  const auto b = smooth_at(StatisticSpec::clique(80, 2), 0.5, o);
  out.add("clique smooth discrepancy n=40 -> 80 ratio <= 0.75", rate_check(a, b, 0.75),
          "n=40: " + describe(a) + ", n=80: " + describe(b));
  out.seconds = sw.seconds();
  return out;
}

/// Link count (d=1, t_size=1, p=0.5): smooth discrepancy does not increase
/// from n=100 to n=400, at 3-stderr confidence.
inline SuiteResult verify_link_rate(const RateOptions& o = {}) {
  SuiteResult out;
  out.suite = "rate-link";
  detail::Stopwatch sw;
  const auto a = smooth_at(StatisticSpec::link(100, 1, 1), 0.5, o);
  const auto b = smooth_at(StatisticSpec::link(400, 1, 1), 0.5, o);
  out.add("link smooth discrepancy n=100 -> 400 decreases", rate_check(a, b, 1.0),
          "n=100: " + describe(a) + ", n=400: " + describe(b));
  out.seconds = sw.seconds();
  return out;
}

/// crit_bound(n) * n stays bounded over n = 40, 80, 160 (d=2, p=0.5): each
/// doubling of n may not grow n * B by more than 10%. Also the value itself
/// must drop by a quarter from n=40 to n=80.
inline SuiteResult verify_crit_rate() {
  SuiteResult out;
  out.suite = "rate-critical";
  detail::Stopwatch sw;
  const int ns[] = {40, 80, 160};
  double nb[3];
  double val[3];
  for (int i = 0; i < 3; ++i) {
    val[i] = crit_bound(ns[i], 2, 0.5).smooth.value;
    nb[i] = ns[i] * val[i];
  }
  const std::string series = "n*B: " + detail::fmt(nb[0]) + ", " + detail::fmt(nb[1]) + ", " + detail::fmt(nb[2]);
  out.add("n * crit_bound bounded over n = 40, 80, 160", nb[1] <= 1.1 * nb[0] && nb[2] <= 1.1 * nb[1], series);
  out.add("crit_bound(80) <= 0.75 crit_bound(40)", val[1] <= 0.75 * val[0],
          detail::fmt(val[1]) + " vs " + detail::fmt(0.75 * val[0]));
  out.seconds = sw.seconds();
  return out;
}

/// Exact and lower-bound variance of critical edges over n^2, n = 100, 200,
/// 400: both positive and settling (successive ratios within 10%), lower
/// never above exact.
inline SuiteResult verify_variance_order() {
  SuiteResult out;
  out.suite = "variance-order";
  detail::Stopwatch sw;
  const int ns[] = {100, 200, 400};
  double ex[3], lo[3];
  for (int i = 0; i < 3; ++i) {
    const double n2 = static_cast<double>(ns[i]) * ns[i];
    ex[i] = crit_variance(ns[i], 1, 0.5) / n2;
    lo[i] = crit_variance_lower(ns[i], 1, 0.5) / n2;
  }
  auto settles = [](const double* x) {
    return x[0] > 0 && x[1] > 0 && x[2] > 0 && std::fabs(x[1] / x[0] - 1) <= 0.1 && std::fabs(x[2] / x[1] - 1) <= 0.1;
  };
  auto series = [](const double* x) {
    return detail::fmt(x[0]) + ", " + detail::fmt(x[1]) + ", " + detail::fmt(x[2]);
  };
  out.add("Var/n^2 converges to a positive constant", settles(ex), series(ex));
  const auto th = crit_variance_lower_threshold(1, 0.5);
  out.add("lower/n^2 converges to a positive constant", settles(lo),
          series(lo) + "; raw lower bound first positive at n = " + (th ? std::to_string(*th) : "never"));
  out.add("lower <= exact", lo[0] <= ex[0] && lo[1] <= ex[1] && lo[2] <= ex[2]);
  out.seconds = sw.seconds();
  return out;
}

/// Empirical P(T - T^K >= 1) for critical edges against the Markov bound.
inline SuiteResult verify_truncation(int samples = 10000, std::uint64_t seed = 7) {
  SuiteResult out;
  out.suite = "truncation";
  detail::Stopwatch sw;
  const int n = 30, k = 1;
  const double p = 0.5;
  const int Ks[] = {5, 10, 20};
  int hits[3] = {0, 0, 0};
  for (int r = 0; r < samples; ++r) {
    auto rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(r));
    const Graph g = sample_gnp(n, p, rng);
    const auto full = critical_counts_formula(g, k).counts[0];
    for (int i = 0; i < 3; ++i) hits[i] += (full - truncated_critical_count(g, k + 1, Ks[i])) >= 1;
  }
  for (int i = 0; i < 3; ++i) {
    const double f = static_cast<double>(hits[i]) / samples;
    const double se = std::sqrt(f * (1 - f) / samples);
    const double b = crit_tail_bound(n, k, p, Ks[i]);
    out.add("K=" + std::to_string(Ks[i]), f <= b + 3 * se,
            "frequency " + detail::fmt(f) + " +- " + detail::fmt(se) + ", bound " + detail::fmt(b));
  }
  out.seconds = sw.seconds();
  return out;
}

inline SuiteResult verify_degenerate(std::uint64_t seed = 11) {
  SuiteResult out;
  out.suite = "degenerate";
  detail::Stopwatch sw;
  Eigen::MatrixXd rank1(2, 2);
  rank1 << 1, 1, 1, 1;
  const Eigen::MatrixXd z = mvn_samples(rank1, 10000, seed);
  const double spread = (z.col(0) - z.col(1)).cwiseAbs().maxCoeff();
  out.add("rank-1 samples have equal coordinates", spread <= 1e-12, "max |z1 - z2| = " + detail::fmt(spread));

  // T3 critical is identically zero on 3 vertices: singular covariance.
  MCConfig cfg;
  cfg.stat = StatisticSpec::critical(3, 2);
  cfg.p = 0.5;
  cfg.replicates = 2000;
  cfg.master_seed = seed;
  cfg.standardization = Standardization::empirical;
  try {
    const RunResult r = run_pipeline(cfg);
    const double det = r.target.determinant();
    out.add("pipeline runs on a singular empirical covariance", std::fabs(det) < 1e-12,
            "det(target) = " + detail::fmt(det) + ", smooth " + describe(r.smooth) + ", convex " +
                describe(r.convex));
  } catch (const std::exception& e) {
    out.add("pipeline runs on a singular empirical covariance", false, e.what());
  }
  out.seconds = sw.seconds();
  return out;
}

}  // namespace rcx

#endif  // RCX_VERIFY_HPP
