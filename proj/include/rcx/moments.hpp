#ifndef RCX_MOMENTS_HPP
#define RCX_MOMENTS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "rcx/errors.hpp"
#include "rcx/numeric.hpp"

namespace rcx {

namespace detail {

inline void check_crit(int n, int k, double p, bool open_p) {
  require(k >= 1 && k <= n - 1, "critical moments: need 1 <= k <= n-1");
  if (open_p)
    require(p > 0.0 && p < 1.0, "critical moments: need p in (0,1)");
  else
    require(p >= 0.0 && p <= 1.0, "critical moments: need p in [0,1]");
}

}  // namespace detail

/// Building blocks of the critical-count moments for dimension k (simplex
/// size k+1) in G(n,p). Indices i, j are simplex minima.
class CritMomentTerms {
 public:
  CritMomentTerms(int n, int k, double p) : n_(n), k_(k), p_(p) {
    detail::check_crit(n, k, p, false);
    kk_ = num::pairs(k + 1);
  }

  int n() const { return n_; }
  int k() const { return k_; }
  double p() const { return p_; }

  double pk(double e) const { return std::pow(p_, e); }

  /// (1-p^{k+1})^{a-1} - (1-p^k)^{a-1}
  double eta(int a) const {
    return num::pow1m(pk(k_ + 1), a - 1) - num::pow1m(pk(k_), a - 1);
  }

  /// Expected value of one critical indicator with minimum i.
  double mu(int i) const { return pk(static_cast<double>(kk_)) * eta(i); }

  /// p^{-C(m,2)} (1-p^{k+delta})^{j-i-q} (1-p^{k+delta-m})^q
  double theta(int i, int j, int q, int m, int delta) const {
    return std::pow(p_, -static_cast<double>(num::pairs(m))) *
           num::pow1m(pk(k_ + delta), j - i - q) * num::pow1m(pk(k_ + delta - m), q);
  }

  /// (1-p^a-p^b+p^{a+b-d1})^{i-1} (1-p^a)^{j-i-q} (1-p^{a-d2})^q
  double pi(int i, int j, int a, int b, int d1, int d2, int q) const {
    const double x = pk(a) + pk(b) - pk(a + b - d1);
    return num::pow1m(x, i - 1) * num::pow1m(pk(a), j - i - q) * num::pow1m(pk(a - d2), q);
  }

  /// Number of ordered pairs (s,t) with min(s) = i < j = min(t), |s ∩ t| = m
  /// and q vertices of s in [i, j). Plus: min(t) is in s. Minus: it is not.
  double gamma_plus(int i, int j, int m, int q) const { return gamma(i, j, m, q, m - 1); }
  double gamma_minus(int i, int j, int m, int q) const { return gamma(i, j, m, q, m); }

  /// Covariance of two critical indicators in the plus family, divided by
  /// p^{2C(k+1,2)}.
  double pair_cov_plus(int i, int j, int m, int q) const {
    const int a = k_ + 1;
    return std::pow(p_, -static_cast<double>(num::pairs(m))) *
               (pi(i, j, a, a, m, m, q) + pi(i, j, k_, k_, m - 1, m - 1, q) -
                pi(i, j, k_, a, m - 1, m - 1, q) - pi(i, j, a, k_, m, m, q)) -
           eta(i) * eta(j);
  }

  double pair_cov_minus(int i, int j, int m, int q) const {
    const int a = k_ + 1;
    return std::pow(p_, -static_cast<double>(num::pairs(m))) *
               (pi(i, j, a, a, m, m, q) + pi(i, j, k_, k_, m, m, q) -
                pi(i, j, k_, a, m, m, q) - pi(i, j, a, k_, m, m, q)) -
           eta(i) * eta(j);
  }

  double v1() const { return cross_sum(true); }
  double v2() const { return cross_sum(false); }

  /// Pairs sharing their minimum.
  double v3() const {
    double s = 0.0;
    for (int i = 1; i <= n_ - k_; ++i) {
      const double e = eta(i);
      for (int m = 1; m <= k_; ++m) {
        const double c = num::binom(n_ - i, 2 * k_ + 1 - m) * num::binom(2 * k_ + 1 - m, k_) *
                         num::binom(k_, m - 1);
        if (c == 0.0) continue;
        const double inner =
            num::pow1m(2 * pk(k_ + 1) - pk(2 * k_ + 2 - m), i - 1) +
            num::pow1m(2 * pk(k_) - pk(2 * k_ + 1 - m), i - 1) -
            2 * num::pow1m(pk(k_) + pk(k_ + 1) - pk(2 * k_ + 2 - m), i - 1);
        s += c * (std::pow(p_, -static_cast<double>(num::pairs(m))) * inner - e * e);
      }
    }
    return s;
  }

  /// Diagonal terms.
  double v4() const {
    double s = 0.0;
    const double pK = pk(static_cast<double>(kk_));
    for (int i = 1; i <= n_ - k_; ++i) {
      const double e = eta(i);
      s += num::binom(n_ - i, k_) * (e - pK * e * e);
    }
    return s;
  }

  double variance() const {
    const double pK = pk(static_cast<double>(kk_));
    const double p2K = pK * pK;
    return 2 * p2K * v1() + 2 * p2K * v2() + p2K * v3() + pK * v4();
  }

  // Closed-form pieces of the variance lower bound.

  double r1() const {
    const double q = pk(k_ + 1);
    return lead() * std::pow(k_ + 1.0, k_ + 1) / num::factorial(k_ - 1) * (1 - q) /
           ((2 - q) * pk(2 * k_ + 2));
  }

  double r2() const {
    const double q = pk(k_ + 1);
    return lead() * std::pow(k_ + 1.0, k_ + 1) / num::factorial(k_ - 1) *
           std::pow(p_, -static_cast<double>(num::pairs(k_))) * (1 - q) / pk(2 * k_ + 2);
  }

  double r3() const {
    return lead() * std::pow(static_cast<double>(k_), k_) / num::factorial(k_) * 2 *
           (std::pow(p_, -static_cast<double>(num::pairs(k_))) + 1) * std::pow(p_, -(k_ + 1.0));
  }

  double r4() const {
    const double two_k = 2.0 * k_;
    return std::pow((n_ - 2.0) / two_k, two_k) * num::binom(2 * k_, k_) * pk(2 * k_ + 1) * (1 - p_);
  }

  /// p^{2C(k+1,2)} (R4 - 8R1 - 8R2 - R3), unclamped.
  double lower_raw() const {
    const double pK = pk(static_cast<double>(kk_));
    return pK * pK * (r4() - 8 * r1() - 8 * r2() - r3());
  }

 private:
  double lead() const { return std::pow(static_cast<double>(n_), 2 * k_ - 1) * std::pow(2.0 * k_ - 1, k_); }

  double gamma(int i, int j, int m, int q, int choose_from_k) const {
    const int free = 2 * k_ + 1 - m - q;
    return num::binom(n_ - j, free) * num::binom(free, k_) * num::binom(k_, choose_from_k) *
           num::binom(j - i - 1, q - 1);
  }

  double cross_sum(bool plus) const {
    double s = 0.0;
    for (int i = 1; i <= n_ - k_ - 1; ++i)
      for (int j = i + 1; j <= n_ - k_; ++j)
        for (int m = 1; m <= k_; ++m)
          for (int q = 1; q <= std::min(k_ + 1, j - i); ++q) {
            const double g = plus ? gamma_plus(i, j, m, q) : gamma_minus(i, j, m, q);
            if (g == 0.0) continue;
            s += g * (plus ? pair_cov_plus(i, j, m, q) : pair_cov_minus(i, j, m, q));
          }
    return s;
  }

  int n_;
  int k_;
  double p_;
  long long kk_ = 0;
};

/// Expected number of critical k-simplices (size k+1).
inline double crit_mean(int n, int k, double p) {
  detail::check_crit(n, k, p, false);
  const double pK = std::pow(p, static_cast<double>(num::pairs(k + 1)));
  const double a = std::pow(p, k + 1), b = std::pow(p, k);
  double s = 0.0;
  for (int l = 0; l <= n - k - 1; ++l)
    s += num::binom(n - l - 1, k) * (num::pow1m(a, l) - num::pow1m(b, l));
  return pK * s;
}

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

inline Interval crit_mean_bounds(int n, int k, double p) {
  detail::check_crit(n, k, p, false);
  const double K = static_cast<double>(num::pairs(k + 1));
  return {std::pow(p, K + k) * num::binom(n - 2, k) * (1 - p),
          std::pow(p, K - k - 1) * num::binom(n - 1, k) * (1 - p)};
}

inline double crit_variance(int n, int k, double p) {
  detail::check_crit(n, k, p, true);
  return CritMomentTerms(n, k, p).variance();
}

inline double crit_variance_lower(int n, int k, double p) {
  detail::check_crit(n, k, p, true);
  return std::max(0.0, CritMomentTerms(n, k, p).lower_raw());
}

/// Smallest n >= k+1 with a strictly positive variance lower bound, or
/// nullopt if none is found up to `n_max`. Only the closed-form R terms are
/// evaluated, so large n is cheap.
inline std::optional<int> crit_variance_lower_threshold(int k, double p, int n_max = 1'000'000'000) {
  require(k >= 1, "threshold: k must be >= 1");
  require(p > 0.0 && p < 1.0, "threshold: need p in (0,1)");
  auto positive = [&](int n) { return CritMomentTerms(n, k, p).lower_raw() > 0.0; };
  int lo = k + 1, hi = k + 1;
  while (!positive(hi)) {
    lo = hi;
    if (hi >= n_max) return std::nullopt;
    hi = hi > n_max / 2 ? n_max : hi * 2;
  }
  if (hi == k + 1) return hi;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (positive(mid) ? hi : lo) = mid;
  }
  return hi;
}

/// Markov bound on P(T_{k+1} - T^K_{k+1} >= 1).
inline double crit_tail_bound(int n, int k, double p, int K) {
  detail::check_crit(n, k, p, true);
  require(K >= 1 && K <= n - k, "crit_tail_bound: need 1 <= K <= n-k");
  const double e = static_cast<double>(num::pairs(k + 1)) - k - 1;
  return std::pow(p, e) * std::pow(static_cast<double>(n), k) / num::factorial(k) *
         num::pow1m(std::pow(p, k + 1), K);
}

namespace detail {

inline void check_link(int n, int t_size, int k, double p) {
  require(t_size >= 1, "link moments: t_size must be >= 1");
  require(k >= 0 && k + 1 <= n - t_size, "link moments: need 0 <= k and k+1 <= n - t_size");
  require(p >= 0.0 && p <= 1.0, "link moments: need p in [0,1]");
}

}  // namespace detail

/// E T^t_{k+1}.
inline double link_mean(int n, int t_size, int k, double p) {
  detail::check_link(n, t_size, k, p);
  const double e = static_cast<double>(num::pairs(k + 1)) + static_cast<double>(t_size) * (k + 1);
  return num::binom(n - t_size, k + 1) * std::pow(p, e);
}

/// Cov(T^t_{k+1}, T^t_{l+1}), exact overlap sum.
inline double link_cov(int n, int t_size, int k, int l, double p) {
  detail::check_link(n, t_size, k, p);
  detail::check_link(n, t_size, l, p);
  if (k < l) std::swap(k, l);
  const int nt = n - t_size;
  const double A = static_cast<double>(num::pairs(k + 1) + num::pairs(l + 1)) +
                   static_cast<double>(t_size) * (k + l + 2);
  double s = 0.0;
  for (int m = 1; m <= l + 1; ++m) {
    const double c = num::binom(nt, k + 1) * num::binom(k + 1, m) * num::binom(nt - k - 1, l + 1 - m);
    if (c == 0.0) continue;
    const double shared = static_cast<double>(num::pairs(m)) + static_cast<double>(t_size) * m;
    s += c * (std::pow(p, A - shared) - std::pow(p, A));
  }
  return s;
}

/// (k+1) C(n-|t|, l+k+1) C(l+k+1, l) mu_k mu_l (p^{-|t|} - 1), k >= l.
inline double link_cov_lower(int n, int t_size, int k, int l, double p) {
  detail::check_link(n, t_size, k, p);
  detail::check_link(n, t_size, l, p);
  if (k < l) std::swap(k, l);
  const double A = static_cast<double>(num::pairs(k + 1) + num::pairs(l + 1)) +
                   static_cast<double>(t_size) * (k + l + 2);
  return (k + 1) * num::binom(n - t_size, l + k + 1) * num::binom(l + k + 1, l) *
         (std::pow(p, A - t_size) - std::pow(p, A));
}

/// E T_k, the number of k-cliques.
inline double clique_mean(int n, int k, double p) {
  require(k >= 1 && k <= n, "clique_mean: need 1 <= k <= n");
  require(p >= 0.0 && p <= 1.0, "clique_mean: need p in [0,1]");
  return num::binom(n, k) * std::pow(p, static_cast<double>(num::pairs(k)));
}

/// Cov of the (i+1)- and (j+1)-clique counts.
inline double clique_cov(int n, int i, int j, double p) {
  require(i >= 1 && j >= 1 && i + 1 <= n && j + 1 <= n, "clique_cov: need 2 <= sizes <= n");
  require(p >= 0.0 && p <= 1.0, "clique_cov: need p in [0,1]");
  const double A = static_cast<double>(num::pairs(i + 1) + num::pairs(j + 1));
  double s = 0.0;
  for (int m = 2; m <= std::min(i + 1, j + 1); ++m) {
    const double c = num::binom(n, i + 1) * num::binom(i + 1, m) * num::binom(n - i - 1, j + 1 - m);
    if (c == 0.0) continue;
    s += c * (std::pow(p, A - static_cast<double>(num::pairs(m))) - std::pow(p, A));
  }
  return s;
}

}  // namespace rcx

#endif  // RCX_MOMENTS_HPP
