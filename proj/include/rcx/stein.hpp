#ifndef RCX_STEIN_HPP
#define RCX_STEIN_HPP

#include <algorithm>
#include <cmath>
#include <iterator>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rcx/cliques.hpp"
#include "rcx/errors.hpp"
#include "rcx/moments.hpp"
#include "rcx/numeric.hpp"
#include "rcx/report.hpp"
#include "rcx/simplex.hpp"

namespace rcx {

inline constexpr const char* kSmoothClass = "|h|_3 <= 1 smooth test functions";
inline constexpr const char* kConvexClass = "convex sets";

/// Values at or above this are no better than the trivial bound.
inline constexpr double kVacuousThreshold = 2.0;

struct BoundReport {
  std::string name;
  double value = 0.0;
  double rate_exponent = 0.0;  // power of the scale parameter already applied
  Json params = Json::object();
  std::string smoothness_class = kSmoothClass;

  bool vacuous() const { return value >= kVacuousThreshold; }

  Json to_json() const {
    Json j;
    j["name"] = name;
    j["value"] = value;
    j["rate_exponent"] = rate_exponent;
    j["vacuous"] = vacuous();
    j["params"] = params;
    j["smoothness_class"] = smoothness_class;
    return j;
  }
};

/// A smooth-class bound and its convex-set transfer.
struct BoundPair {
  BoundReport smooth;
  BoundReport convex;
};

/// Index set with dependency neighbourhoods and absolute-moment oracles.
/// Indices are 0..size()-1; component[s] is the coordinate of W that X_s
/// contributes to. neighbours[s] must be sorted and contain s.
struct DissociatedInstance {
  int d = 1;
  std::vector<int> component;
  std::vector<std::vector<int>> neighbours;
  std::function<double(int, int, int)> triple;       // E|X_s X_t X_u|
  std::function<double(int, int, int)> pair_single;  // E|X_s X_t| E|X_u|

  std::size_t size() const { return component.size(); }

  /// Number of (s,t,u) evaluations generic_bound would make.
  double term_count() const {
    double terms = 0.0;
    for (std::size_t s = 0; s < size(); ++s) {
      const double ds = static_cast<double>(neighbours[s].size());
      terms += ds * ds;
      for (int t : neighbours[s]) terms += static_cast<double>(neighbours[static_cast<std::size_t>(t)].size());
    }
    return terms;
  }
};

inline constexpr double kDefaultTermBudget = 1e8;

/// B = B.1 + B.2 by direct summation over the instance.
inline BoundReport generic_bound(const DissociatedInstance& inst, double budget = kDefaultTermBudget) {
  require(inst.neighbours.size() == inst.size(), "generic_bound: neighbours/component size mismatch");
  const double terms = inst.term_count();
  if (terms > budget)
    throw BudgetExceeded("generic_bound: " + std::to_string(terms) + " terms exceed the budget of " +
                             std::to_string(budget),
                         terms);
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t si = 0; si < inst.size(); ++si) {
    const int s = static_cast<int>(si);
    const auto& ds = inst.neighbours[si];
    for (int t : ds)
      for (int u : ds) b1 += 0.5 * inst.triple(s, t, u) + inst.pair_single(s, t, u);
    for (int t : ds) {
      const auto& dt = inst.neighbours[static_cast<std::size_t>(t)];
      // v in D(t) \ D(s); both lists sorted.
      auto it = ds.begin();
      for (int v : dt) {
        while (it != ds.end() && *it < v) ++it;
        if (it != ds.end() && *it == v) continue;
        b2 += inst.triple(s, t, v) + inst.pair_single(s, t, v);
      }
    }
  }
  BoundReport r;
  r.name = "generic";
  r.value = (b1 + b2) / 3.0;
  r.params = {{"d", inst.d}, {"indices", inst.size()}, {"B1", b1 / 3.0}, {"B2", b2 / 3.0}};
  return r;
}

/// B = (1/3) sum_{i,j,k} |I_i| a_ij (3 a_ik / 2 + 2 a_jk) b_ijk, with beta
/// flattened as beta[(i*d + j)*d + k].
inline BoundReport uniform_bound(int d, const std::vector<double>& sizes, const Eigen::MatrixXd& alpha,
                                 const std::vector<double>& beta) {
  require(d >= 1, "uniform_bound: d must be >= 1");
  require(sizes.size() == static_cast<std::size_t>(d) && alpha.rows() == d && alpha.cols() == d &&
              beta.size() == static_cast<std::size_t>(d) * d * d,
          "uniform_bound: dimension mismatch");
  for (double x : sizes) require(x >= 0.0, "uniform_bound: sizes must be >= 0");
  for (double x : beta) require(x >= 0.0, "uniform_bound: beta must be >= 0");
  require((alpha.array() >= 0.0).all(), "uniform_bound: alpha must be >= 0");
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        s += sizes[static_cast<std::size_t>(i)] * alpha(i, j) * (1.5 * alpha(i, k) + 2.0 * alpha(j, k)) *
             beta[static_cast<std::size_t>((i * d + j) * d + k)];
  BoundReport r;
  r.name = "uniform";
  r.value = s / 3.0;
  r.params = {{"d", d}};
  return r;
}

inline double convex_constant(int d) {
  return std::pow(2.0, 3.5) * std::pow(3.0, -0.75) * std::pow(static_cast<double>(d), 3.0 / 16.0);
}

/// Convex-set distance from a smooth-class B.
inline BoundReport convex_bound(int d, double smooth_b) {
  require(d >= 1, "convex_bound: d must be >= 1");
  require(smooth_b >= 0.0, "convex_bound: smooth B must be >= 0");
  BoundReport r;
  r.name = "convex";
  r.value = convex_constant(d) * std::pow(smooth_b, 0.25);
  r.params = {{"d", d}, {"smooth_b", smooth_b}};
  r.smoothness_class = kConvexClass;
  return r;
}

inline BoundReport convex_from(const BoundReport& smooth, int d) {
  BoundReport r = convex_bound(d, smooth.value);
  r.name = smooth.name + "-convex";
  r.rate_exponent = smooth.rate_exponent / 4.0;
  r.params = smooth.params;
  r.params["smooth_value"] = smooth.value;
  return r;
}

/// Upper bound on E|X1 X2 X3| and E|X1 X2| E|X3| for centred, scaled
/// Bernoulli variables.
inline double moment_bound(double mu1, double mu2, double c1, double c2, double c3) {
  require(mu1 >= 0.0 && mu1 <= 1.0 && mu2 >= 0.0 && mu2 <= 1.0, "moment_bound: means must lie in [0,1]");
  require(c1 > 0.0 && c2 > 0.0 && c3 > 0.0, "moment_bound: constants must be > 0");
  return c1 * c2 * c3 * std::sqrt(mu1 * mu2 * (1 - mu1) * (1 - mu2));
}

namespace detail {

/// Mean of a critical indicator of dimension i with minimum a.
inline double crit_indicator_mean(int i, int a, double p) {
  return std::pow(p, static_cast<double>(num::pairs(i + 1))) *
         (num::pow1m(std::pow(p, i + 1), a - 1) - num::pow1m(std::pow(p, i), a - 1));
}

/// Pairs (phi, psi) of sizes i+1 and j+1 with minima a and b that share a
/// vertex.
inline double overlapping_pairs(int n, int i, int j, int a, int b) {
  const double all = num::binom(n - a, i) * num::binom(n - b, j);
  if (a == b) return all;
  if (a > b) {
    std::swap(a, b);
    std::swap(i, j);
  }
  // phi puts h of its i non-minimal vertices above b and the rest in (a,b).
  double disjoint = 0.0;
  for (int h = 0; h <= i; ++h)
    disjoint += num::binom(b - a - 1, i - h) * num::binom(n - b, h) * num::binom(n - b - h, j);
  return all - disjoint;
}

/// |D_k(phi)| for |phi| = i+1: (k+1)-sets meeting phi.
inline double meeting_sets(int n, int i, int k) {
  return num::binom(n, k + 1) - num::binom(n - i - 1, k + 1);
}

}  // namespace detail

/// Grouped bound for the standardized critical-count vector (dimensions
/// 1..d). Pairs (phi, psi) are grouped by dimensions and minima; every
/// summand uses moment_bound with exact indicator means and exact standard
/// deviations. The D(psi) term carries weight 2 so that the value dominates
/// generic_bound on the same instance.
inline BoundPair crit_bound(int n, int d, double p) {
  require(d >= 1 && d + 1 <= n, "crit_bound: need 1 <= d and d+1 <= n");
  require(p > 0.0 && p < 1.0, "crit_bound: need p in (0,1)");
  std::vector<double> sigma(static_cast<std::size_t>(d) + 1);
  for (int i = 1; i <= d; ++i) sigma[static_cast<std::size_t>(i)] = std::sqrt(crit_variance(n, i, p));
  double total = 0.0;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      // Sum over minima of N_ij(a,b) sqrt(mu_a (1-mu_a) mu_b (1-mu_b)).
      double grouped = 0.0;
      for (int a = 1; a <= n - i; ++a) {
        const double ma = detail::crit_indicator_mean(i, a, p);
        if (ma <= 0.0 || ma >= 1.0) continue;
        for (int b = 1; b <= n - j; ++b) {
          const double mb = detail::crit_indicator_mean(j, b, p);
          if (mb <= 0.0 || mb >= 1.0) continue;
          const double cnt = detail::overlapping_pairs(n, i, j, a, b);
          if (cnt == 0.0) continue;
          grouped += cnt * std::sqrt(ma * mb * (1 - ma) * (1 - mb));
        }
      }
      for (int k = 1; k <= d; ++k) {
        const double s3 = sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(j)] *
                          sigma[static_cast<std::size_t>(k)];
        if (s3 <= 0.0) continue;
        total += (1.5 * detail::meeting_sets(n, i, k) + 2.0 * detail::meeting_sets(n, j, k)) * grouped / s3;
      }
    }
  BoundPair out;
  out.smooth.name = "crit";
  out.smooth.value = total / 3.0;
  out.smooth.rate_exponent = -1.0;
  out.smooth.params = {{"n", n}, {"d", d}, {"p", p}};
  out.convex = convex_from(out.smooth, d);
  return out;
}

/// Constant of the link-count bound; smooth value B (n-|t|)^{-1/2}.
inline double link_constant(int t_size, int d, double p) {
  require(t_size >= 1 && d >= 1, "link_bound: need t_size >= 1 and d >= 1");
  require(p > 0.0 && p < 1.0, "link_bound: need p in (0,1)");
  return 7.0 / 6.0 * std::pow(2.0 * d + 1, 5.0 * d + 8.5) *
         std::pow(std::pow(p, -static_cast<double>(t_size)) - 1.0, -1.5) *
         std::pow(p, -static_cast<double>(d + 1) * (d + 2.0 * t_size));
}

inline BoundPair link_bound(int n, int t_size, int d, double p) {
  require(n > t_size, "link_bound: need n > t_size");
  const double B = link_constant(t_size, d, p);
  BoundPair out;
  out.smooth.name = "link";
  out.smooth.value = B * std::pow(static_cast<double>(n - t_size), -0.5);
  out.smooth.rate_exponent = -0.5;
  out.smooth.params = {{"n", n}, {"t_size", t_size}, {"d", d}, {"p", p}, {"B", B}};
  out.convex = convex_from(out.smooth, d);
  return out;
}

namespace detail {

inline double ustat_sum(const std::vector<int>& k, const std::vector<double>& alpha) {
  require(!k.empty() && k.size() == alpha.size(), "ustat bound: k and alpha must have equal, nonzero length");
  for (int x : k) require(x >= 1, "ustat bound: k_i must be >= 1");
  for (double a : alpha) require(a > 0.0, "ustat bound: alpha_i must be > 0");
  const std::size_t d = k.size();
  std::vector<double> K(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double ki = k[i];
    K[i] = std::pow(2 * ki * ki - ki, -ki / 2 + 0.5);
  }
  auto ov = [&](std::size_t a, std::size_t b) {
    return std::pow(static_cast<double>(k[a]), std::min(k[a], k[b]) + 1);
  };
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l)
        s += ov(i, j) / (num::factorial(k[i]) * std::sqrt(alpha[i] * alpha[j] * alpha[l])) *
             (ov(i, l) + ov(j, l)) * K[i] * K[j] * K[l];
  return s;
}

inline BoundPair ustat_pair(const char* name, double lead, double smooth_rate, const std::vector<int>& k,
                            const std::vector<double>& alpha, double beta, int n) {
  require(beta >= 0.0, "ustat bound: beta must be >= 0");
  require(n >= 0, "ustat bound: n must be >= 0");
  const double B = lead * beta * ustat_sum(k, alpha);
  const int d = static_cast<int>(k.size());
  BoundPair out;
  out.smooth.name = name;
  out.smooth.rate_exponent = smooth_rate;
  out.smooth.value = n > 0 ? B * std::pow(static_cast<double>(n), smooth_rate) : B;
  out.smooth.params = {{"k", k}, {"alpha", alpha}, {"beta", beta}, {"B", B}};
  if (n > 0) out.smooth.params["n"] = n;
  out.convex = convex_from(out.smooth, d);
  return out;
}

}  // namespace detail

/// Generalised U-statistic bound with vertex labels. With n = 0 the value is
/// the constant B; otherwise B n^{-1/2}.
inline BoundPair ustat_bound(const std::vector<int>& k, const std::vector<double>& alpha, double beta, int n = 0) {
  return detail::ustat_pair("ustat", 2.0 / 3.0, -0.5, k, alpha, beta, n);
}

/// Edge-only variant; B n^{-1}.
inline BoundPair ustat_no_x_bound(const std::vector<int>& k, const std::vector<double>& alpha, double beta,
                                  int n = 0) {
  return detail::ustat_pair("ustat-no-x", 16.0 / 3.0, -1.0, k, alpha, beta, n);
}

/// U-statistic parameters of the clique-count vector (sizes 2..d+1).
struct CliqueUstatParams {
  std::vector<int> k;
  std::vector<double> alpha;
  double beta = 0.0;
};

inline CliqueUstatParams clique_ustat_params(int d, double p) {
  require(d >= 1 && p > 0.0 && p < 1.0, "clique parameters: need d >= 1 and p in (0,1)");
  CliqueUstatParams out;
  for (int i = 1; i <= d; ++i) {
    out.k.push_back(i + 1);
    out.alpha.push_back(std::pow(p, 2.0 * static_cast<double>(num::pairs(i + 1))) * (1.0 / p - 1.0));
  }
  out.beta = p * (1.0 - std::pow(p, static_cast<double>(num::pairs(d + 1))));
  return out;
}

inline double clique_constant(int d, double p) {
  require(d >= 1, "clique_bound: d must be >= 1");
  require(p > 0.0 && p < 1.0, "clique_bound: need p in (0,1)");
  const double D = static_cast<double>(num::pairs(d + 1));
  return 16.0 / 3.0 * std::pow(static_cast<double>(d), 2.0 * d + 5) * std::pow(p, -3.0 * D + 1) *
         (1 - std::pow(p, D)) * std::pow(1.0 / p - 1.0, -1.5);
}

/// Clique-count bound; smooth value B n^{-1}.
inline BoundPair clique_bound(int n, int d, double p) {
  require(n >= 1, "clique_bound: n must be >= 1");
  const double B = clique_constant(d, p);
  BoundPair out;
  out.smooth.name = "clique";
  out.smooth.value = B / n;
  out.smooth.rate_exponent = -1.0;
  out.smooth.params = {{"n", n}, {"d", d}, {"p", p}, {"B", B}};
  out.convex = convex_from(out.smooth, d);
  return out;
}

/// The standardized critical-count vector of G(n,p), n small, as an explicit
/// instance: one index per (i+1)-subset, i = 1..d, neighbourhoods by shared
/// vertex, moments by moment_bound.
struct EnumeratedCritical {
  std::vector<Simplex> simplices;
  DissociatedInstance instance;
};

inline EnumeratedCritical enumerate_critical_instance(int n, int d, double p) {
  require(d >= 1 && d + 1 <= n, "critical instance: need 1 <= d and d+1 <= n");
  require(p > 0.0 && p < 1.0, "critical instance: need p in (0,1)");
  EnumeratedCritical out;
  auto& inst = out.instance;
  inst.d = d;
  const Graph kn = Graph::complete(n);
  std::vector<double> mean, scale;
  std::vector<double> sigma(static_cast<std::size_t>(d) + 1);
  for (int i = 1; i <= d; ++i) sigma[static_cast<std::size_t>(i)] = std::sqrt(crit_variance(n, i, p));
  for (int i = 1; i <= d; ++i)
    for (const Simplex& s : cliques(kn, i + 1)) {
      out.simplices.push_back(s);
      inst.component.push_back(i - 1);
      mean.push_back(detail::crit_indicator_mean(i, s.min(), p));
      scale.push_back(1.0 / sigma[static_cast<std::size_t>(i)]);
    }
  const std::size_t N = out.simplices.size();
  inst.neighbours.resize(N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      const auto va = out.simplices[a].vertices(), vb = out.simplices[b].vertices();
      std::vector<int> common;
      std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
      if (!common.empty()) inst.neighbours[a].push_back(static_cast<int>(b));
    }
  auto bound = [mean, scale](int s, int t, int u) {
    return moment_bound(mean[static_cast<std::size_t>(s)], mean[static_cast<std::size_t>(t)],
                        scale[static_cast<std::size_t>(s)], scale[static_cast<std::size_t>(t)],
                        scale[static_cast<std::size_t>(u)]);
  };
  inst.triple = bound;
  inst.pair_single = bound;
  return out;
}

}  // namespace rcx

#endif  // RCX_STEIN_HPP
