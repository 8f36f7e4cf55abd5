#include <gtest/gtest.h>

#include <cmath>

#include "rcx/covariance.hpp"
#include "rcx/monte_carlo.hpp"
#include "rcx/oracle.hpp"
#include "rcx/verify.hpp"

using namespace rcx;

using V = std::vector<std::int64_t>;

TEST(ExactDistribution, CriticalTriangle) {
  const auto d = exact_distribution(StatisticSpec::critical(3, 1), 0.5);
  EXPECT_NEAR(d.probability(V{1}), 0.125, 1e-15);
  EXPECT_NEAR(d.probability(V{0}), 0.875, 1e-15);
  EXPECT_EQ(d.mass.size(), 2u);
}

TEST(ExactDistribution, CompleteGraphIsPointMass) {
  const auto d = exact_distribution(StatisticSpec::clique(3, 2), 1.0);
  ASSERT_EQ(d.mass.size(), 1u);
  EXPECT_EQ(d.mass.begin()->first, (V{3, 1}));
  EXPECT_DOUBLE_EQ(d.mass.begin()->second, 1.0);
}

TEST(ExactDistribution, LinkDegreeIsBinomial) {
  const auto d = exact_distribution(StatisticSpec::link(3, 1, Simplex{1}), 0.5);
  EXPECT_NEAR(d.probability(V{0}), 0.25, 1e-15);
  EXPECT_NEAR(d.probability(V{1}), 0.5, 1e-15);
  EXPECT_NEAR(d.probability(V{2}), 0.25, 1e-15);
}

TEST(ExactDistribution, ProbabilitiesSumToOne) {
  for (int n = 2; n <= 6; ++n)
    for (double p : {0.0, 0.2, 0.5, 1.0}) {
      EXPECT_NEAR(exact_distribution(StatisticSpec::clique(n, 1), p).total(), 1.0, 1e-12);
      EXPECT_NEAR(exact_distribution(StatisticSpec::critical(n, n - 1), p).total(), 1.0, 1e-12);
    }
}

TEST(ExactDistribution, RejectsLargeN) {
  EXPECT_THROW(exact_distribution(StatisticSpec::clique(7, 1), 0.5), CapExceeded);
}

TEST(ExactDistribution, JsonSupportIsSorted) {
  const Json j = exact_distribution(StatisticSpec::clique(4, 2), 0.5).to_json();
  ASSERT_EQ(j["support"].size(), j["probabilities"].size());
  for (std::size_t i = 1; i < j["support"].size(); ++i)
    EXPECT_LT(j["support"][i - 1].get<V>(), j["support"][i].get<V>());
}

TEST(ExactMoments, CliqueTriangle) {
  const auto m = exact_moments(StatisticSpec::clique(3, 2), 0.5);
  EXPECT_NEAR(m.mean(0), 1.5, 1e-15);
  EXPECT_NEAR(m.mean(1), 0.125, 1e-15);
  EXPECT_NEAR(m.cov(0, 0), 0.75, 1e-15);
  EXPECT_NEAR(m.cov(1, 1), 7.0 / 64, 1e-15);
  EXPECT_NEAR(m.cov(0, 1), 3 * std::pow(0.5, 3) * 0.5, 1e-15);
  EXPECT_EQ(m.provenance, Provenance::exact_oracle);
}

TEST(ExactMoments, ZeroProbabilityGivesZeros) {
  const auto m = exact_moments(StatisticSpec::critical(5, 3), 0.0);
  EXPECT_TRUE((m.mean.array() == 0).all());
  EXPECT_TRUE((m.cov.array() == 0).all());
}

TEST(ExactMoments, CovarianceIsSymmetricPsd) {
  const auto m = exact_moments(StatisticSpec::critical(6, 3), 0.4);
  EXPECT_LT((m.cov - m.cov.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NO_THROW(psd_sqrt(m.cov));
}

TEST(VerifyOracle, AllGatesPass) {
  const auto r = verify_oracle();
  EXPECT_TRUE(r.ok()) << r.to_json().dump(2);
  EXPECT_GT(r.gates.size(), 50u);
}

TEST(ExactMoments, MonteCarloAgrees) {
  const int reps = 200000;
  for (const auto& spec : {StatisticSpec::critical(5, 2), StatisticSpec::clique(5, 2),
                           StatisticSpec::link(5, 2, Simplex({1, 2}))}) {
    const auto exact = exact_moments(spec, 0.5);
    MCConfig cfg;
    cfg.stat = spec;
    cfg.p = 0.5;
    cfg.replicates = reps;
    cfg.master_seed = 99;
    const auto raw = simulate_raw(cfg);
    const auto mean = column_means(raw);
    for (int i = 0; i < spec.d; ++i) {
      const double se = std::sqrt(exact.cov(i, i) / reps);
      EXPECT_NEAR(mean(i), exact.mean(i), 5 * se) << to_string(spec.kind) << " component " << i;
    }
  }
}
