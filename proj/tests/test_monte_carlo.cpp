#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "rcx/monte_carlo.hpp"
#include "rcx/pipeline.hpp"

using namespace rcx;

namespace {

MCConfig config(StatisticSpec s, double p, int reps, std::uint64_t seed = 3) {
  MCConfig c;
  c.stat = std::move(s);
  c.p = p;
  c.replicates = reps;
  c.master_seed = seed;
  return c;
}

PipelineOptions light() {
  PipelineOptions o;
  o.convex.quantiles = 4;
  o.convex.halfspaces = 4;
  return o;
}

}  // namespace

TEST(SimulateRaw, CompleteGraphRows) {
  const auto raw = simulate_raw(config(StatisticSpec::clique(10, 2), 1.0, 5));
  ASSERT_EQ(raw.rows(), 5);
  for (Eigen::Index r = 0; r < raw.rows(); ++r) {
    EXPECT_EQ(raw(r, 0), 45);
    EXPECT_EQ(raw(r, 1), 120);
  }
}

TEST(SimulateRaw, EmptyGraphRows) {
  const auto raw = simulate_raw(config(StatisticSpec::critical(6, 2), 0.0, 4));
  EXPECT_TRUE((raw.array() == 0).all());
}

TEST(SimulateRaw, DeterministicPerSeed) {
  const auto c = config(StatisticSpec::critical(12, 2), 0.4, 50);
  EXPECT_EQ(simulate_raw(c), simulate_raw(c));
  auto other = c;
  other.master_seed = 4;
  EXPECT_NE(simulate_raw(c), simulate_raw(other));
}

TEST(SimulateRaw, SplitsAndThreadsGiveIdenticalRows) {
  auto c = config(StatisticSpec::link(15, 2, 1), 0.5, 60);
  const auto full = simulate_raw(c);
  Eigen::MatrixXd merged(60, 2);
  merged << simulate_raw(c, 0, 23), simulate_raw(c, 23, 37);
  EXPECT_EQ(merged, full);
  c.threads = 3;
  EXPECT_EQ(simulate_raw(c), full);
}

TEST(SimulateRaw, RejectsBadConfig) {
  EXPECT_THROW(simulate_raw(config(StatisticSpec::clique(5, 1), 0.5, 1)), DomainError);
  EXPECT_THROW(simulate_raw(config(StatisticSpec::clique(5, 1), 1.5, 10)), DomainError);
}

TEST(Standardize, ZeroSigmaColumnMapsToZero) {
  Eigen::MatrixXd raw(3, 2);
  raw << 1, 5, 2, 5, 3, 5;
  Eigen::VectorXd mean(2), sigma(2);
  mean << 2, 5;
  sigma << 1, 0;
  const auto w = standardize(raw, mean, sigma);
  EXPECT_EQ(w(0, 0), -1);
  EXPECT_EQ(w(2, 0), 1);
  EXPECT_TRUE((w.col(1).array() == 0).all());
}

TEST(EmpiricalCov, ConstantRowsAndSymmetry) {
  EXPECT_TRUE((empirical_cov(Eigen::MatrixXd::Constant(10, 3, 2.5)).array() == 0).all());
  Eigen::MatrixXd x(4, 2);
  x << 1, 2, 3, 1, 0, 0, 2, 5;
  const auto c = empirical_cov(x);
  EXPECT_EQ(c(0, 1), c(1, 0));
  EXPECT_NEAR(c(0, 0), 5.0 / 3, 1e-14);
  EXPECT_THROW(empirical_cov(Eigen::MatrixXd::Zero(1, 2)), DomainError);
}

TEST(Pipeline, CriticalStandardizedMeanNearZero) {
  const int reps = 20000;
  const auto r = run_pipeline(config(StatisticSpec::critical(3, 1), 0.5, reps), light());
  EXPECT_LT(std::fabs(column_means(r.w)(0)), 4.0 / std::sqrt(reps));
  EXPECT_EQ(r.moments.provenance, Provenance::analytic);
}

TEST(Pipeline, CliqueStandardizedVarianceNearOne) {
  const auto r = run_pipeline(config(StatisticSpec::clique(40, 2), 0.5, 10000), light());
  const auto c = empirical_cov(r.w);
  EXPECT_NEAR(c(0, 0), 1.0, 0.05);
  EXPECT_NEAR(c(1, 1), 1.0, 0.05);
  EXPECT_NEAR(r.target(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(c(0, 1), r.target(0, 1), 0.05);
}

TEST(Pipeline, EmpiricalStandardizationUsesSampleMoments) {
  auto cfg = config(StatisticSpec::critical(8, 2), 0.5, 500);
  cfg.standardization = Standardization::empirical;
  const auto r = run_pipeline(cfg, light());
  EXPECT_EQ(r.moments.provenance, Provenance::empirical);
  EXPECT_LT(column_means(r.w).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(r.target(0, 0), 1.0, 1e-12);
}

TEST(Pipeline, JsonKeysAndVerdicts) {
  const auto r = run_pipeline(config(StatisticSpec::clique(12, 1), 0.5, 200), light());
  const Json j = r.to_json();
  for (const char* key :
       {"config", "moments", "target_cov", "empirical_mean_w", "empirical_cov_w", "bounds", "discrepancies", "verdicts"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["bounds"].size(), 2u);
  EXPECT_TRUE(j["verdicts"].contains("smooth"));
  EXPECT_EQ(j["config"]["standardization"], "analytic");
}

TEST(Pipeline, NoBoundsAtDegenerateP) {
  const auto r = run_pipeline(config(StatisticSpec::clique(6, 1), 1.0, 20), light());
  EXPECT_FALSE(r.bounds.has_value());
  EXPECT_TRUE(r.to_json()["verdicts"].empty());
}

TEST(Pipeline, CsvHeaderAndRows) {
  const auto r = run_pipeline(config(StatisticSpec::clique(6, 2), 0.5, 7), light());
  std::ostringstream os;
  r.write_csv(os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "T2,T3,W1,W2");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 7);
}

TEST(Mvn, IdentityCovariance) {
  const int reps = 40000;
  const auto z = mvn_samples(Eigen::MatrixXd::Identity(3, 3), reps, 5);
  const auto m = column_means(z);
  const auto c = empirical_cov(z);
  const double tol = 4.0 / std::sqrt(reps);
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT(std::fabs(m(i)), tol);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(c(i, j), i == j ? 1.0 : 0.0, 2 * std::sqrt(2.0) * tol);
  }
}

TEST(Mvn, RankOneAndZero) {
  const auto z = mvn_samples(Eigen::MatrixXd::Ones(2, 2), 1000, 6);
  EXPECT_LT((z.col(0) - z.col(1)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_TRUE((mvn_samples(Eigen::MatrixXd::Zero(2, 2), 50, 6).array() == 0).all());
}

TEST(Mvn, RejectsIndefiniteAndAsymmetric) {
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 2, 1;
  EXPECT_THROW(mvn_samples(bad, 10, 1), NotPositiveSemidefinite);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0, 1;
  EXPECT_THROW(mvn_samples(asym, 10, 1), DomainError);
}

TEST(SmoothDiscrepancy, IdenticalSamplesGiveZero) {
  const auto z = mvn_samples(Eigen::MatrixXd::Identity(2, 2), 500, 8);
  const auto rep = smooth_discrepancy(z, z, SmoothFamily::standard(2));
  EXPECT_EQ(rep.estimate, 0.0);
  EXPECT_FALSE(rep.witness.empty());
}

TEST(SmoothDiscrepancy, DetectsShift) {
  const auto z = mvn_samples(Eigen::MatrixXd::Identity(1, 1), 5000, 9);
  const Eigen::MatrixXd w = z.array() + 1.0;
  const auto rep = smooth_discrepancy(w, z, SmoothFamily::standard(1));
  EXPECT_GT(rep.estimate, 10 * rep.stderr_);
}

TEST(SmoothFamily, CertificateIsOne) {
  for (int d : {1, 2, 4}) EXPECT_LE(SmoothFamily::standard(d).certificate(), 1.0);
  EXPECT_EQ(SmoothFamily::standard(3).size(), (6u + 6u) * 3u);
}

TEST(ConvexDiscrepancy, WholeSpaceOnlyGivesZero) {
  const auto z = mvn_samples(Eigen::MatrixXd::Identity(2, 2), 300, 10);
  const Eigen::MatrixXd w = z.array() + 3.0;
  ConvexFamily f;
  f.quantiles = 0;
  f.halfspaces = 0;
  EXPECT_EQ(convex_discrepancy(w, z, f).estimate, 0.0);
}

TEST(ConvexDiscrepancy, IdenticalSamplesGiveZeroAndShiftIsSeen) {
  const auto z = mvn_samples(Eigen::MatrixXd::Identity(2, 2), 2000, 11);
  EXPECT_EQ(convex_discrepancy(z, z, ConvexFamily{}).estimate, 0.0);
  const Eigen::MatrixXd w = z.array() + 0.5;
  const auto rep = convex_discrepancy(w, z, ConvexFamily{});
  EXPECT_GT(rep.estimate, 0.15);
  EXPECT_LE(rep.estimate, 1.0);
}

TEST(ConvexDiscrepancy, RejectsHighDimension) {
  const Eigen::MatrixXd x = Eigen::MatrixXd::Zero(5, 7);
  EXPECT_THROW(convex_discrepancy(x, x, ConvexFamily{}), DomainError);
}

TEST(BoundCheck, Examples) {
  auto bound = [](double v) {
    BoundReport b;
    b.value = v;
    return b;
  };
  DiscrepancyReport small{0.01, 0.0, "", "", std::nullopt};
  EXPECT_EQ(bound_check(small, bound(0.5)), Verdict::pass);
  DiscrepancyReport mid{0.3, 0.0, "", "", std::nullopt};
  EXPECT_EQ(bound_check(mid, bound(12)), Verdict::vacuous_pass);
  DiscrepancyReport big{0.5, 0.01, "", "", std::nullopt};
  EXPECT_EQ(bound_check(big, bound(0.1)), Verdict::fail);
  EXPECT_EQ(to_string(Verdict::vacuous_pass), "VACUOUS-PASS");
}

TEST(RateCheck, Examples) {
  DiscrepancyReport a{0.04, 0.001, "", "", std::nullopt}, b{0.02, 0.001, "", "", std::nullopt};
  EXPECT_TRUE(rate_check(a, b, 0.75));
  EXPECT_FALSE(rate_check(b, a, 0.75));
  DiscrepancyReport noisy{0.04, 0.02, "", "", std::nullopt};
  EXPECT_TRUE(rate_check(b, noisy, 0.75));
}
