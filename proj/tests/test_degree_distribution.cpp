#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ltnc/degree_distribution.hpp"
#include "ltnc/rng.hpp"
#include "oracles/rsd_oracle.hpp"

using namespace ltnc;

TEST(Rsd, MatchesHighPrecisionEvaluation) {
  for (std::size_t k : {2u, 3u, 10u, 50u, 100u, 200u, 1000u, 2048u}) {
    const auto mu = build_rsd(k, 0.05, 0.5);
    const auto ref = oracle::rsd(k, 0.05, 0.5);
    ASSERT_EQ(mu.k(), k);
    for (std::size_t d = 0; d <= k; ++d)
      ASSERT_NEAR(mu[d], static_cast<double>(ref[d]), 1e-10) << "k=" << k << " d=" << d;
  }
}

TEST(Rsd, OtherParametersMatchToo) {
  for (double c : {0.01, 0.1, 0.3})
    for (double delta : {0.05, 0.5, 0.9}) {
      const auto mu = build_rsd(300, c, delta);
      const auto ref = oracle::rsd(300, c, delta);
      for (std::size_t d = 0; d <= 300; ++d) ASSERT_NEAR(mu[d], static_cast<double>(ref[d]), 1e-10);
    }
}

TEST(Rsd, KnownValuesAtK100) {
  const auto mu = build_rsd(100, 0.05, 0.5);
  EXPECT_NEAR(mu[1], 0.0316, 5e-4);
  EXPECT_NEAR(mu[2], 0.4444, 5e-4);
  EXPECT_NEAR(mu[3], 0.1519, 5e-4);
}

TEST(Rsd, NormalizedAndNonNegativeAcrossSizes) {
  for (std::size_t k = 1; k <= 5000; k += (k < 200 ? 1 : 97)) {
    const auto mu = build_rsd(k, 0.05, 0.5);
    EXPECT_EQ(mu[0], 0.0);
    double s = 0.0;
    for (double p : mu.probs()) {
      ASSERT_GE(p, 0.0);
      s += p;
    }
    ASSERT_NEAR(s, 1.0, 1e-12) << "k=" << k;
    for (std::size_t d = 1; d <= k; ++d) ASSERT_GT(mu[d], 0.0);
  }
}

TEST(Rsd, SpikeSitsAtFloorKOverS) {
  const auto mu = build_rsd(1000, 0.05, 0.5);
  ASSERT_TRUE(mu.params());
  const double s = 0.05 * std::log(1000 / 0.5) * std::sqrt(1000.0);
  const auto spike = static_cast<std::size_t>(std::floor(1000 / s));
  EXPECT_EQ(mu.params()->spike, spike);
  EXPECT_GT(mu[spike], mu[spike - 1]);
  EXPECT_GT(mu[spike], mu[spike + 1]);
}

TEST(Rsd, SingleMessageIsPointMass) {
  const auto mu = build_rsd(1, 0.05, 0.5);
  EXPECT_EQ(mu.k(), 1u);
  EXPECT_EQ(mu[1], 1.0);
}

TEST(Rsd, RejectsBadParameters) {
  EXPECT_THROW(build_rsd(0, 0.05, 0.5), ParameterError);
  EXPECT_THROW(build_rsd(10, 0.0, 0.5), ParameterError);
  EXPECT_THROW(build_rsd(10, -1.0, 0.5), ParameterError);
  EXPECT_THROW(build_rsd(10, 0.05, 0.0), ParameterError);
  EXPECT_THROW(build_rsd(10, 0.05, 1.0), ParameterError);
  EXPECT_THROW(build_rsd(10, NAN, 0.5), ParameterError);
}

TEST(DegreeDistribution, RejectsNegativeOrNonFinite) {
  EXPECT_THROW(DegreeDistribution(std::vector<double>{0.0, -0.1, 1.1}), ParameterError);
  EXPECT_THROW(DegreeDistribution(std::vector<double>{0.0, INFINITY}), ParameterError);
  EXPECT_THROW(DegreeDistribution(std::vector<double>{}), ParameterError);
}

TEST(DegreeDistribution, PointMassAlwaysSamplesItsDegree) {
  const auto pm = point_mass(10, 4);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(pm.sample(rng), 4u);
  EXPECT_THROW(point_mass(3, 4), ParameterError);
}

TEST(DegreeDistribution, SamplingFrequencyMatchesProbability) {
  const auto mu = build_rsd(100, 0.05, 0.5);
  Rng rng(11);
  constexpr int n = 1000000;
  int twos = 0;
  for (int i = 0; i < n; ++i) twos += mu.sample(rng) == 2 ? 1 : 0;
  EXPECT_NEAR(static_cast<double>(twos) / n, mu[2], 0.005);
}

TEST(DegreeDistribution, SampleAtNeverReturnsZeroMassDegree) {
  const DegreeDistribution d(std::vector<double>{0.0, 0.5, 0.0, 0.5, 0.0});
  EXPECT_EQ(d.sample_at(0.0), 1u);
  EXPECT_EQ(d.sample_at(0.4999), 1u);
  EXPECT_EQ(d.sample_at(0.5), 3u);
  EXPECT_EQ(d.sample_at(std::nextafter(1.0, 0.0)), 3u);
}

TEST(DegreeDistribution, UnnormalizedSamplingIsAContractViolation) {
  const DegreeDistribution d(std::vector<double>{0.0, 0.3, 0.5});
  EXPECT_FALSE(d.is_normalized());
  EXPECT_NEAR(d.total(), 0.8, 1e-15);
  Rng rng(1);
  EXPECT_THROW(d.sample(rng), ContractError);
}

TEST(DegreeDistribution, MeanOfPointMass) {
  EXPECT_DOUBLE_EQ(point_mass(9, 7).mean(), 7.0);
}
