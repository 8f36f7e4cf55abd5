#ifndef RCX_MONTE_CARLO_HPP
#define RCX_MONTE_CARLO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "rcx/errors.hpp"
#include "rcx/graph.hpp"
#include "rcx/report.hpp"
#include "rcx/rng.hpp"
#include "rcx/statistic.hpp"
#include "rcx/stein.hpp"

namespace rcx {

enum class Standardization { analytic, empirical };

inline std::string_view to_string(Standardization s) {
  return s == Standardization::analytic ? "analytic" : "empirical";
}

inline Standardization parse_standardization(std::string_view s) {
  if (s == "analytic") return Standardization::analytic;
  if (s == "empirical") return Standardization::empirical;
  throw DomainError("unknown standardization '" + std::string(s) + "'");
}

struct MCConfig {
  StatisticSpec stat;
  double p = 0.5;
  int replicates = 1000;
  std::uint64_t master_seed = 0;
  Standardization standardization = Standardization::analytic;
  int threads = 1;

  void validate() const {
    stat.validate();
    require(p >= 0.0 && p <= 1.0, "p must lie in [0,1]");
    require(replicates >= 2, "replicates must be >= 2");
    require(threads >= 1, "threads must be >= 1");
  }

  Json to_json() const {
    Json j;
    j["kind"] = std::string(to_string(stat.kind));
    j["params"] = spec_params(stat, p);
    j["replicates"] = replicates;
    j["master_seed"] = master_seed;
    j["standardization"] = std::string(to_string(standardization));
    return j;
  }
};

/// Raw count vectors for replicates [first, first + count). Replicate r is
/// drawn from SplitMix64::stream(master_seed, r), so any split of the range
/// (across calls or threads) yields the same rows.
inline Eigen::MatrixXd simulate_raw(const MCConfig& cfg, int first, int count) {
  cfg.validate();
  require(first >= 0 && count >= 0, "simulate_raw: negative range");
  Eigen::MatrixXd out(count, cfg.stat.d);
  auto work = [&](int lo, int hi) {
    for (int r = lo; r < hi; ++r) {
      auto rng = SplitMix64::stream(cfg.master_seed, static_cast<std::uint64_t>(first + r));
      const Graph g = sample_gnp(cfg.stat.n, cfg.p, rng);
      const auto v = count_vector(g, cfg.stat);
      for (int c = 0; c < cfg.stat.d; ++c) out(r, c) = static_cast<double>(v[static_cast<std::size_t>(c)]);
    }
  };
  const int t = std::min(cfg.threads, std::max(1, count));
  if (t == 1) {
    work(0, count);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(work, count * i / t, count * (i + 1) / t);
    for (auto& th : pool) th.join();
  }
  return out;
}

inline Eigen::MatrixXd simulate_raw(const MCConfig& cfg) { return simulate_raw(cfg, 0, cfg.replicates); }

/// Columns centred by `mean` and divided by `sigma`; zero-sigma columns map
/// to 0.
inline Eigen::MatrixXd standardize(const Eigen::MatrixXd& raw, const Eigen::VectorXd& mean,
                                   const Eigen::VectorXd& sigma) {
  require(mean.size() == raw.cols() && sigma.size() == raw.cols(), "standardize: dimension mismatch");
  Eigen::MatrixXd w(raw.rows(), raw.cols());
  for (Eigen::Index c = 0; c < raw.cols(); ++c) {
    if (sigma(c) > 0.0)
      w.col(c) = (raw.col(c).array() - mean(c)) / sigma(c);
    else
      w.col(c).setZero();
  }
  return w;
}

inline Eigen::VectorXd column_means(const Eigen::MatrixXd& x) { return x.colwise().mean().transpose(); }

/// Unbiased sample covariance.
inline Eigen::MatrixXd empirical_cov(const Eigen::MatrixXd& x) {
  require(x.rows() >= 2, "empirical_cov: need at least 2 rows");
  const Eigen::MatrixXd c = x.rowwise() - x.colwise().mean();
  Eigen::MatrixXd s = (c.transpose() * c) / static_cast<double>(x.rows() - 1);
  return (s + s.transpose()) / 2.0;
}

inline constexpr double kPsdTolerance = 1e-9;

/// Symmetric PSD square root. Eigenvalues in [-tol * trace, 0) are set to 0;
/// anything more negative is rejected.
inline Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& cov) {
  require(cov.rows() == cov.cols(), "psd_sqrt: matrix must be square");
  require((cov - cov.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, cov.cwiseAbs().maxCoeff()),
          "psd_sqrt: matrix must be symmetric");
  if (cov.rows() == 0) return cov;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  const double tol = kPsdTolerance * std::max(cov.trace(), 0.0);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tol)
      throw NotPositiveSemidefinite("covariance has eigenvalue " + std::to_string(ev(i)) +
                                    " below the PSD tolerance");
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

/// Rows are Sigma^{1/2} Z with Z standard normal.
inline Eigen::MatrixXd mvn_samples(const Eigen::MatrixXd& cov, int replicates, std::uint64_t seed) {
  require(replicates >= 1, "mvn_samples: replicates must be >= 1");
  const Eigen::MatrixXd root = psd_sqrt(cov);
  const Eigen::Index d = cov.rows();
  Eigen::MatrixXd z(replicates, d);
  for (int r = 0; r < replicates; ++r) {
    auto rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(r));
    for (Eigen::Index c = 0; c < d; ++c) z(r, c) = rng.normal();
  }
  return z * root;  // root is symmetric
}

struct DiscrepancyReport {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::string family;
  std::string witness;  // member attaining the maximum
  std::optional<BoundReport> bound_used;

  Json to_json() const {
    Json j;
    j["estimate"] = estimate;
    j["stderr"] = stderr_;
    j["family"] = family;
    j["witness"] = witness;
    if (bound_used) j["bound"] = bound_used->to_json();
    return j;
  }
};

inline double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

/// Test functions h(x) = g(<a,x> + c) with g the logistic function.
/// sup|g'''| = 1/8, so |h|_3 <= ||a||_inf^3 / 8; the directions are
/// +-2 e_i and +-(e_i + e_j), giving |h|_3 <= 1.
struct SmoothFamily {
  std::vector<Eigen::VectorXd> directions;
  std::vector<double> offsets{-1.0, 0.0, 1.0};

  static SmoothFamily standard(int d) {
    SmoothFamily f;
    for (int i = 0; i < d; ++i) {
      Eigen::VectorXd a = Eigen::VectorXd::Zero(d);
      a(i) = 2.0;
      f.directions.push_back(a);
      f.directions.push_back(-a);
    }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        Eigen::VectorXd a = Eigen::VectorXd::Zero(d);
        a(i) = a(j) = 1.0;
        f.directions.push_back(a);
        f.directions.push_back(-a);
      }
    return f;
  }

  double certificate() const {
    double m = 0.0;
    for (const auto& a : directions) m = std::max(m, a.cwiseAbs().maxCoeff());
    return m * m * m / 8.0;
  }

  std::size_t size() const { return directions.size() * offsets.size(); }
};

inline DiscrepancyReport smooth_discrepancy(const Eigen::MatrixXd& w, const Eigen::MatrixXd& z,
                                            const SmoothFamily& family) {
  require(w.cols() == z.cols(), "smooth_discrepancy: column counts differ");
  require(w.rows() >= 2 && z.rows() >= 2, "smooth_discrepancy: need at least 2 rows per sample");
  require(family.size() > 0, "smooth_discrepancy: empty test-function family");
  DiscrepancyReport rep;
  rep.family = "logistic ridge functions, " + std::to_string(family.size()) + " members, |h|_3 <= " +
               std::to_string(family.certificate());
  bool first = true;
  for (const auto& a : family.directions) {
    require(a.size() == w.cols(), "smooth_discrepancy: direction has wrong dimension");
    const Eigen::VectorXd pw = w * a, pz = z * a;
    for (double c : family.offsets) {
      const Eigen::ArrayXd hw = (pw.array() + c).unaryExpr(&logistic);
      const Eigen::ArrayXd hz = (pz.array() + c).unaryExpr(&logistic);
      const double mw = hw.mean(), mz = hz.mean();
      const double vw = (hw - mw).square().sum() / static_cast<double>(hw.size() - 1);
      const double vz = (hz - mz).square().sum() / static_cast<double>(hz.size() - 1);
      const double diff = std::fabs(mw - mz);
      if (first || diff > rep.estimate) {
        first = false;
        rep.estimate = diff;
        rep.stderr_ = std::sqrt(vw / static_cast<double>(hw.size()) + vz / static_cast<double>(hz.size()));
        std::ostringstream os;
        os << "a=(";
        for (Eigen::Index i = 0; i < a.size(); ++i) os << (i ? "," : "") << a(i);
        os << ") c=" << c;
        rep.witness = os.str();
      }
    }
  }
  return rep;
}

/// Axis-aligned rectangles whose sides run between consecutive-or-wider
/// points of {-inf, q_1, ..., q_m, +inf}, where q are `quantiles` evenly
/// spaced empirical quantiles of each W marginal, plus `halfspaces` seeded
/// random halfspaces {<u,x> <= q} thresholded at the same quantile levels of
/// <u,W>. With zero quantiles and halfspaces the family is {R^d}.
struct ConvexFamily {
  int quantiles = 9;
  int halfspaces = 16;
  std::uint64_t seed = 0x5eed;

  std::size_t size(int d) const {
    const double per_dim = (quantiles + 2.0) * (quantiles + 1.0) / 2.0;
    return static_cast<std::size_t>(std::pow(per_dim, d)) +
           static_cast<std::size_t>(halfspaces) * static_cast<std::size_t>(std::max(quantiles, 1));
  }
};

namespace detail {

inline std::vector<double> quantile_levels(Eigen::VectorXd v, int m) {
  std::vector<double> out;
  if (m <= 0) return out;
  std::sort(v.data(), v.data() + v.size());
  for (int i = 1; i <= m; ++i) {
    const double pos = static_cast<double>(i) / (m + 1) * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<Eigen::Index>(std::floor(pos));
    const auto hi = std::min<Eigen::Index>(lo + 1, v.size() - 1);
    out.push_back(v(lo) + (pos - static_cast<double>(lo)) * (v(hi) - v(lo)));
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Cell index of x among cut points: cell c covers [cuts[c-1], cuts[c]).
inline int cell_of(double x, const std::vector<double>& cuts) {
  return static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
}

/// d-dimensional histogram with inclusive prefix sums; rectangle counts are
/// then an inclusion-exclusion over 2^d corners.
class PrefixGrid {
 public:
  PrefixGrid(const Eigen::MatrixXd& x, const std::vector<std::vector<double>>& cuts) : cuts_(cuts) {
    const int d = static_cast<int>(cuts.size());
    stride_.assign(static_cast<std::size_t>(d), 1);
    dims_.resize(static_cast<std::size_t>(d));
    std::size_t total = 1;
    for (int c = d - 1; c >= 0; --c) {
      dims_[static_cast<std::size_t>(c)] = static_cast<int>(cuts[static_cast<std::size_t>(c)].size()) + 1;
      stride_[static_cast<std::size_t>(c)] = total;
      total *= static_cast<std::size_t>(dims_[static_cast<std::size_t>(c)]);
    }
    grid_.assign(total, 0.0);
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      std::size_t idx = 0;
      for (int c = 0; c < d; ++c)
        idx += stride_[static_cast<std::size_t>(c)] *
               static_cast<std::size_t>(cell_of(x(r, c), cuts[static_cast<std::size_t>(c)]));
      grid_[idx] += 1.0;
    }
    // Prefix sums along each axis in turn.
    for (int c = 0; c < d; ++c) {
      const std::size_t st = stride_[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < total; ++i) {
        const auto coord = (i / st) % static_cast<std::size_t>(dims_[static_cast<std::size_t>(c)]);
        if (coord > 0) grid_[i] += grid_[i - st];
      }
    }
  }

  /// Points in the union of cells [lo_c, hi_c) per axis.
  double count(const std::vector<int>& lo, const std::vector<int>& hi) const {
    const int d = static_cast<int>(dims_.size());
    double s = 0.0;
    for (unsigned mask = 0; mask < (1U << d); ++mask) {
      std::size_t idx = 0;
      bool skip = false;
      int sign = 1;
      for (int c = 0; c < d; ++c) {
        int at = hi[static_cast<std::size_t>(c)] - 1;
        if (mask & (1U << c)) {
          at = lo[static_cast<std::size_t>(c)] - 1;
          sign = -sign;
        }
        if (at < 0) {
          skip = true;
          break;
        }
        idx += stride_[static_cast<std::size_t>(c)] * static_cast<std::size_t>(at);
      }
      if (!skip) s += sign * grid_[idx];
    }
    return s;
  }

  const std::vector<int>& dims() const { return dims_; }

 private:
  std::vector<std::vector<double>> cuts_;
  std::vector<int> dims_;
  std::vector<std::size_t> stride_;
  std::vector<double> grid_;
};

}  // namespace detail

inline DiscrepancyReport convex_discrepancy(const Eigen::MatrixXd& w, const Eigen::MatrixXd& z,
                                            const ConvexFamily& family) {
  require(w.cols() == z.cols(), "convex_discrepancy: column counts differ");
  require(w.rows() >= 1 && z.rows() >= 1, "convex_discrepancy: empty sample");
  require(family.quantiles >= 0 && family.halfspaces >= 0, "convex_discrepancy: negative family size");
  const int d = static_cast<int>(w.cols());
  require(d >= 1 && d <= 6, "convex_discrepancy: rectangle grid supports 1 <= d <= 6");
  const double nw = static_cast<double>(w.rows()), nz = static_cast<double>(z.rows());

  DiscrepancyReport rep;
  rep.family = "quantile rectangles (" + std::to_string(family.quantiles) + " quantiles) + " +
               std::to_string(family.halfspaces) + " random halfspaces";
  rep.witness = "R^d";
  auto consider = [&](double cw, double cz, const std::string& what) {
    const double fw = cw / nw, fz = cz / nz;
    const double diff = std::fabs(fw - fz);
    if (diff > rep.estimate) {
      rep.estimate = diff;
      rep.stderr_ = std::sqrt(fw * (1 - fw) / nw + fz * (1 - fz) / nz);
      rep.witness = what;
    }
  };

  std::vector<std::vector<double>> cuts(static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c) cuts[static_cast<std::size_t>(c)] = detail::quantile_levels(w.col(c), family.quantiles);
  const detail::PrefixGrid gw(w, cuts), gz(z, cuts);
  const auto& dims = gw.dims();
  // Enumerate [lo, hi) per axis with 0 <= lo < hi <= dims.
  std::vector<int> lo(static_cast<std::size_t>(d), 0), hi(static_cast<std::size_t>(d), 1);
  for (;;) {
    consider(gw.count(lo, hi), gz.count(lo, hi), "rectangle");
    int c = 0;
    for (; c < d; ++c) {
      auto& h = hi[static_cast<std::size_t>(c)];
      auto& l = lo[static_cast<std::size_t>(c)];
      if (++h <= dims[static_cast<std::size_t>(c)]) break;
      if (++l < dims[static_cast<std::size_t>(c)]) {
        h = l + 1;
        break;
      }
      l = 0;
      h = 1;
    }
    if (c == d) break;
  }

  SplitMix64 rng(family.seed);
  for (int h = 0; h < family.halfspaces; ++h) {
    Eigen::VectorXd u(d);
    for (int c = 0; c < d; ++c) u(c) = rng.normal();
    if (u.norm() == 0.0) u(0) = 1.0;
    u.normalize();
    const Eigen::VectorXd pw = w * u, pz = z * u;
    for (double q : detail::quantile_levels(pw, std::max(family.quantiles, 1))) {
      const double cw = static_cast<double>((pw.array() <= q).count());
      const double cz = static_cast<double>((pz.array() <= q).count());
      consider(cw, cz, "halfspace " + std::to_string(h));
    }
  }
  return rep;
}

enum class Verdict { pass, vacuous_pass, fail };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::vacuous_pass: return "VACUOUS-PASS";
    case Verdict::fail: return "FAIL";
  }
  return "?";
}

inline Verdict bound_check(const DiscrepancyReport& report, const BoundReport& bound) {
  if (bound.vacuous()) return Verdict::vacuous_pass;
  return report.estimate <= bound.value + 3.0 * report.stderr_ ? Verdict::pass : Verdict::fail;
}

/// est_large <= ratio * est_small at 3-stderr confidence.
inline bool rate_check(const DiscrepancyReport& small, const DiscrepancyReport& large, double ratio) {
  const double se = std::sqrt(large.stderr_ * large.stderr_ + ratio * ratio * small.stderr_ * small.stderr_);
  return large.estimate <= ratio * small.estimate + 3.0 * se;
}

}  // namespace rcx

#endif  // RCX_MONTE_CARLO_HPP
