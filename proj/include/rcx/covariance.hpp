#ifndef RCX_COVARIANCE_HPP
#define RCX_COVARIANCE_HPP

#include <cstdint>

#include <Eigen/Dense>

#include "rcx/moments.hpp"
#include "rcx/monte_carlo.hpp"
#include "rcx/oracle.hpp"
#include "rcx/report.hpp"
#include "rcx/statistic.hpp"

namespace rcx {

/// Where critical-count off-diagonals come from when n > kMaxExhaustiveVertices.
struct EmpiricalSource {
  int replicates = 20000;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Mean vector and covariance of the raw count vector. Clique and link
/// statistics are fully analytic. For critical counts the means and
/// variances are analytic; cross-dimension covariances come from the
/// exhaustive oracle for n <= 6 and from simulation otherwise.
inline MomentReport statistic_cov_matrix(const StatisticSpec& spec, double p, const EmpiricalSource& src = {}) {
  spec.validate();
  require(p >= 0.0 && p <= 1.0, "p must lie in [0,1]");
  const int d = spec.d;
  MomentReport r;
  r.kind = spec.kind;
  r.params = spec_params(spec, p);
  r.mean = Eigen::VectorXd::Zero(d);
  r.cov = Eigen::MatrixXd::Zero(d, d);
  switch (spec.kind) {
    case StatisticKind::clique:
      for (int a = 0; a < d; ++a) {
        r.mean(a) = clique_mean(spec.n, a + 2, p);
        for (int b = 0; b < d; ++b) r.cov(a, b) = clique_cov(spec.n, a + 1, b + 1, p);
      }
      break;
    case StatisticKind::link:
      for (int a = 0; a < d; ++a) {
        r.mean(a) = link_mean(spec.n, spec.t_size(), a, p);
        for (int b = 0; b < d; ++b) r.cov(a, b) = link_cov(spec.n, spec.t_size(), a, b, p);
      }
      break;
    case StatisticKind::critical: {
      const bool degenerate = p == 0.0 || p == 1.0;
      for (int a = 0; a < d; ++a) {
        r.mean(a) = crit_mean(spec.n, a + 1, p);
        r.cov(a, a) = degenerate ? 0.0 : crit_variance(spec.n, a + 1, p);
      }
      if (d > 1 && !degenerate) {
        Eigen::MatrixXd off;
        if (spec.n <= kMaxExhaustiveVertices) {
          off = exact_moments(spec, p).cov;
          r.off_diagonal = Provenance::exact_oracle;
        } else {
          MCConfig cfg;
          cfg.stat = spec;
          cfg.p = p;
          cfg.replicates = src.replicates;
          cfg.master_seed = src.seed;
          cfg.threads = src.threads;
          off = empirical_cov(simulate_raw(cfg));
          r.off_diagonal = Provenance::empirical;
        }
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            if (a != b) r.cov(a, b) = off(a, b);
      }
      break;
    }
  }
  return r;
}

/// Covariance of the standardized vector W: Cov(T_a, T_b) / (sigma_a sigma_b),
/// 0 where a sigma vanishes.
inline Eigen::MatrixXd standardized_cov(const MomentReport& m) {
  const Eigen::VectorXd s = m.sigma();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m.cov.rows(), m.cov.cols());
  for (Eigen::Index a = 0; a < c.rows(); ++a)
    for (Eigen::Index b = 0; b < c.cols(); ++b)
      if (s(a) > 0.0 && s(b) > 0.0) c(a, b) = m.cov(a, b) / (s(a) * s(b));
  return c;
}

}  // namespace rcx

#endif  // RCX_COVARIANCE_HPP
