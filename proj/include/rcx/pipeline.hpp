#ifndef RCX_PIPELINE_HPP
#define RCX_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <Eigen/Dense>

#include "rcx/covariance.hpp"
#include "rcx/monte_carlo.hpp"
#include "rcx/report.hpp"
#include "rcx/stein.hpp"

namespace rcx {

struct PipelineOptions {
  ConvexFamily convex;
  bool with_bounds = true;
};

/// Everything one simulate run produces.
struct RunResult {
  MCConfig config;
  MomentReport moments;      // of the raw counts, as used for standardization
  Eigen::MatrixXd target;    // covariance of W, used for Sigma^{1/2} Z
  Eigen::MatrixXd raw;       // replicates x d
  Eigen::MatrixXd w;         // standardized
  DiscrepancyReport smooth;
  DiscrepancyReport convex;
  std::optional<BoundPair> bounds;

  Json to_json() const {
    Json j;
    j["config"] = config.to_json();
    j["moments"] = moments.to_json();
    j["target_cov"] = rcx::to_json(target);
    j["empirical_mean_w"] = rcx::to_json(column_means(w));
    j["empirical_cov_w"] = rcx::to_json(empirical_cov(w));
    Json b = Json::array();
    if (bounds) {
      b.push_back(bounds->smooth.to_json());
      b.push_back(bounds->convex.to_json());
    }
    j["bounds"] = std::move(b);
    j["discrepancies"] = {{"smooth", smooth.to_json()}, {"convex", convex.to_json()}};
    Json v;
    if (bounds) {
      v["smooth"] = std::string(to_string(bound_check(smooth, bounds->smooth)));
      v["convex"] = std::string(to_string(bound_check(convex, bounds->convex)));
    }
    j["verdicts"] = v.is_null() ? Json::object() : v;
    return j;
  }

  /// One row per replicate: raw columns T{size}, then standardized W{i}.
  void write_csv(std::ostream& os) const {
    const auto names = config.stat.raw_names();
    for (const auto& n : names) os << n << ',';
    for (int i = 1; i <= config.stat.d; ++i) os << 'W' << i << (i == config.stat.d ? "\n" : ",");
    os.precision(17);
    for (Eigen::Index r = 0; r < raw.rows(); ++r) {
      for (Eigen::Index c = 0; c < raw.cols(); ++c) os << static_cast<long long>(raw(r, c)) << ',';
      for (Eigen::Index c = 0; c < w.cols(); ++c) os << w(r, c) << (c + 1 == w.cols() ? "\n" : ",");
    }
  }
};

/// Stein bound matching the statistic, when its formula applies.
inline std::optional<BoundPair> bound_for(const StatisticSpec& s, double p) {
  if (p <= 0.0 || p >= 1.0) return std::nullopt;
  switch (s.kind) {
    case StatisticKind::clique: return clique_bound(s.n, s.d, p);
    case StatisticKind::link: return link_bound(s.n, s.t_size(), s.d, p);
    case StatisticKind::critical: return crit_bound(s.n, s.d, p);
  }
  return std::nullopt;
}

inline std::uint64_t normal_seed(std::uint64_t master) { return SplitMix64::mix(master ^ 0x4E4F524D414CULL); }

inline RunResult run_pipeline(const MCConfig& cfg, const PipelineOptions& opt = {}) {
  cfg.validate();
  RunResult r;
  r.config = cfg;
  r.raw = simulate_raw(cfg);
  if (cfg.standardization == Standardization::analytic) {
    EmpiricalSource src;
    src.seed = SplitMix64::mix(cfg.master_seed + 1);
    src.threads = cfg.threads;
    r.moments = statistic_cov_matrix(cfg.stat, cfg.p, src);
    r.w = standardize(r.raw, r.moments.mean, r.moments.sigma());
    r.target = standardized_cov(r.moments);
  } else {
    r.moments.kind = cfg.stat.kind;
    r.moments.params = spec_params(cfg.stat, cfg.p);
    r.moments.mean = column_means(r.raw);
    r.moments.cov = empirical_cov(r.raw);
    r.moments.provenance = r.moments.off_diagonal = Provenance::empirical;
    r.w = standardize(r.raw, r.moments.mean, r.moments.sigma());
    r.target = empirical_cov(r.w);
  }
  const Eigen::MatrixXd z = mvn_samples(r.target, cfg.replicates, normal_seed(cfg.master_seed));
  r.smooth = smooth_discrepancy(r.w, z, SmoothFamily::standard(cfg.stat.d));
  r.convex = convex_discrepancy(r.w, z, opt.convex);
  if (opt.with_bounds) {
    r.bounds = bound_for(cfg.stat, cfg.p);
    if (r.bounds) {
      r.smooth.bound_used = r.bounds->smooth;
      r.convex.bound_used = r.bounds->convex;
    }
  }
  return r;
}

}  // namespace rcx

#endif  // RCX_PIPELINE_HPP
