#include <gtest/gtest.h>

#include <memory>
#include <vector>

#include "ltnc/relay.hpp"

using namespace ltnc;

namespace {

struct Fixture {
  Rng rng{2024};
  SourceBlock s1 = SourceBlock::random(SourceId::S1, 50, 16, rng);
  SourceBlock s2 = SourceBlock::random(SourceId::S2, 50, 16, rng);
  std::shared_ptr<const MergePlan> plan = std::make_shared<const MergePlan>(MergePlan::build(50, 50, 0.05, 0.5));
};

CodedPacket s1_packet(const SourceBlock& s1, std::vector<std::uint32_t> idx) {
  CodedPacket p;
  p.covered_s1 = std::move(idx);
  p.payload = expected_payload(p, s1);
  p.declared_degree = p.degree();
  return p;
}

}  // namespace

TEST(MergePlan, DerivedQuantitiesFollowThePo) {
  Fixture f;
  const auto& plan = *f.plan;
  const auto& po = plan.po();
  for (std::size_t j = 0; j <= 50; ++j) {
    EXPECT_NEAR(plan.p_s1()[j], po.column_sum(j), 1e-15);
    if (j >= 1) {
      const double expected = std::min(1.0, po.column_sum(j) / plan.mu_k1()[j]);
      EXPECT_NEAR(plan.p_using()[j], expected, 1e-15);
      EXPECT_LE(plan.p_using()[j], 1.0);
    }
    if (plan.column_has_mass(j)) {
      EXPECT_NEAR(plan.column_pmf(j).total(), 1.0, 1e-12);
    }
  }
  EXPECT_EQ(plan.p_using()[0], 0.0);
  double merged = 0.0;
  for (std::size_t j = 1; j <= 50; ++j) merged += po.column_sum(j);
  // A fully allocated budget makes the exclusive share equal to column 0's mass.
  EXPECT_NEAR(plan.exclusive_fraction(), 1.0 - merged, 1e-12);
}

TEST(MergingRelay, OutputsAreStructurallyValid) {
  Fixture f;
  MergingRelay relay(f.plan, f.s2, Rng(1));
  LtEncoder enc(f.s1, f.plan->mu_k1());
  for (int n = 0; n < 5000; ++n) {
    const auto in = enc.next(f.rng);
    const auto out = relay.merge(in);
    ASSERT_NO_THROW(validate_structure(out));
    ASSERT_EQ(out.payload, expected_payload(out, f.s1, &f.s2));
    if (!out.s2_only()) {
      ASSERT_EQ(out.covered_s1, in.covered_s1);
    }
    ASSERT_LE(out.degree(), 100u);
  }
}

TEST(MergingRelay, ForcedPassThrough) {
  const auto mu2 = build_rsd(2, 0.05, 0.5);
  JointDegreeMatrix po(2, 2);
  po(1, 1) = mu2[1];
  po(2, 2) = mu2[2];
  auto plan = std::make_shared<const MergePlan>(po, mu2);
  Rng rng(3);
  const auto s1 = SourceBlock::random(SourceId::S1, 2, 8, rng);
  const auto s2 = SourceBlock::random(SourceId::S2, 2, 8, rng);
  MergingRelay relay(plan, s2, Rng(4));
  for (const auto& idx : {std::vector<std::uint32_t>{0}, {1}, {0, 1}}) {
    const auto in = s1_packet(s1, idx);
    const auto out = relay.merge(in);
    EXPECT_EQ(out.covered_s1, in.covered_s1);
    EXPECT_TRUE(out.covered_s2.empty());
    EXPECT_EQ(out.payload, in.payload);
  }
}

TEST(MergingRelay, ZeroUsageGivesOnlyExclusivePackets) {
  const auto mu2 = build_rsd(2, 0.05, 0.5);
  JointDegreeMatrix po(2, 2);
  po(1, 0) = 0.5;
  po(2, 0) = 0.5;
  auto plan = std::make_shared<const MergePlan>(po, mu2);
  EXPECT_DOUBLE_EQ(plan->exclusive_fraction(), 1.0);
  Rng rng(3);
  const auto s1 = SourceBlock::random(SourceId::S1, 2, 8, rng);
  const auto s2 = SourceBlock::random(SourceId::S2, 2, 8, rng);
  MergingRelay relay(plan, s2, Rng(5));
  LtEncoder enc(s1, mu2);
  for (int n = 0; n < 1000; ++n) ASSERT_TRUE(relay.merge(enc.next(rng)).s2_only());
}

TEST(MergingRelay, OutputDegreeLawMatchesMixture) {
  Fixture f;
  const auto& po = f.plan->po();
  const auto& mu = f.plan->mu_k1();
  // Expected law assembled from the raw matrix.
  std::vector<double> expect(po.rows(), 0.0);
  const double col0 = po.column_sum(0);
  for (std::size_t j = 1; j <= 50; ++j) {
    const double cj = po.column_sum(j);
    const double use = std::min(1.0, cj / mu[j]);
    for (std::size_t i = 0; i < po.rows(); ++i) {
      const double merged = cj > 0.0 ? po(i, j) / cj : 0.0;
      expect[i] += mu[j] * (use * merged + (1.0 - use) * po(i, 0) / col0);
    }
  }
  MergingRelay relay(f.plan, f.s2, Rng(6));
  LtEncoder enc(f.s1, mu);
  constexpr int n = 100000;
  std::vector<double> hist(po.rows(), 0.0);
  int exclusive = 0;
  for (int t = 0; t < n; ++t) {
    const auto out = relay.merge(enc.next(f.rng));
    hist[out.degree()] += 1.0 / n;
    exclusive += out.s2_only() ? 1 : 0;
  }
  double tv = 0.0;
  for (std::size_t i = 0; i < hist.size(); ++i) tv += std::abs(hist[i] - expect[i]);
  EXPECT_LT(tv / 2.0, 0.02);
  double merged_mass = 0.0;
  for (std::size_t j = 1; j <= 50; ++j) merged_mass += po.column_sum(j);
  EXPECT_NEAR(static_cast<double>(exclusive) / n, 1.0 - merged_mass, 0.01);
}

TEST(MergingRelay, Errors) {
  Fixture f;
  MergingRelay relay(f.plan, f.s2, Rng(1));
  CodedPacket bad = s1_packet(f.s1, {0});
  bad.covered_s2 = {1};
  bad.declared_degree = 2;
  EXPECT_THROW(relay.merge(bad), ParameterError);
  CodedPacket empty;
  empty.payload.assign(16, 0);
  EXPECT_THROW(relay.merge(empty), ParameterError);
  CodedPacket short_payload = s1_packet(f.s1, {0});
  short_payload.payload.resize(4);
  EXPECT_THROW(relay.merge(short_payload), FormatError);
  Rng rng(1);
  const auto small = SourceBlock::random(SourceId::S2, 10, 16, rng);
  EXPECT_THROW(MergingRelay(f.plan, small, Rng(1)), ParameterError);
  EXPECT_THROW(MergingRelay(nullptr, f.s2, Rng(1)), ParameterError);
  const JointDegreeMatrix zero(2, 2);
  const MergePlan empty_plan(zero, build_rsd(2, 0.05, 0.5));
  EXPECT_THROW(empty_plan.column_pmf(0), ConsistencyError);
}

TEST(MergingRelay, DeterministicForAFixedSeed) {
  Fixture f;
  MergingRelay a(f.plan, f.s2, Rng(9)), b(f.plan, f.s2, Rng(9));
  const auto in = s1_packet(f.s1, {3, 7});
  for (int n = 0; n < 100; ++n) {
    const auto x = a.merge(in);
    const auto y = b.merge(in);
    ASSERT_EQ(x.covered_s1, y.covered_s1);
    ASSERT_EQ(x.covered_s2, y.covered_s2);
  }
}

TEST(TimeMultiplexRelay, AlternatesAndStops) {
  Rng rng(1);
  const auto s1 = SourceBlock::random(SourceId::S1, 20, 8, rng);
  const auto s2 = SourceBlock::random(SourceId::S2, 20, 8, rng);
  LtEncoder e1(s1, build_rsd(20, 0.05, 0.5)), e2(s2, build_rsd(20, 0.05, 0.5));
  TimeMultiplexRelay mux;
  auto stream = [&] { return e1.next(rng); };
  EXPECT_TRUE(mux.next(stream, e2, rng).s1_only());
  EXPECT_TRUE(mux.next(stream, e2, rng).s2_only());
  int n1 = 0, n2 = 0;
  for (int i = 0; i < 200; ++i) {
    const auto p = multiplex_packet(mux, stream, e2, rng);
    n1 += p.s1_only() ? 1 : 0;
    n2 += p.s2_only() ? 1 : 0;
  }
  EXPECT_EQ(n1, 100);
  EXPECT_EQ(n2, 100);
  mux.stop_s1();
  EXPECT_TRUE(mux.s1_stopped());
  for (int i = 0; i < 10; ++i) EXPECT_TRUE(mux.next(stream, e2, rng).s2_only());
}

TEST(NonUniformEncoder, EmptySetMatchesUnionEncoder) {
  Rng rng(1);
  const auto s1 = SourceBlock::random(SourceId::S1, 30, 8, rng);
  const auto s2 = SourceBlock::random(SourceId::S2, 30, 8, rng);
  const auto mu = build_rsd(60, 0.05, 0.5);
  NonUniformEncoder nu(s1, s2, {}, mu);
  UnionLtEncoder un(s1, s2, mu);
  Rng a(5), b(5);
  for (int i = 0; i < 500; ++i) {
    const auto x = nu.next(a);
    const auto y = un.next(b);
    ASSERT_EQ(x.covered_s1, y.covered_s1);
    ASSERT_EQ(x.covered_s2, y.covered_s2);
    ASSERT_EQ(x.payload, y.payload);
  }
}

TEST(NonUniformEncoder, RestrictedDegreeUsesOneSource) {
  Rng rng(1);
  const auto s1 = SourceBlock::random(SourceId::S1, 100, 8, rng);
  const auto s2 = SourceBlock::random(SourceId::S2, 100, 8, rng);
  NonUniformEncoder nu(s1, s2, {2, 3, 4}, point_mass(200, 2));
  int from_s1 = 0;
  constexpr int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto p = nu.next(rng);
    ASSERT_EQ(p.degree(), 2u);
    ASSERT_TRUE(p.s1_only() || p.s2_only());
    ASSERT_EQ(p.payload, expected_payload(p, s1, &s2));
    from_s1 += p.s1_only() ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(from_s1) / n, 0.5, 0.015);
  const auto q = encode_nonuniform(s1, s2, {2}, point_mass(200, 5), rng);
  EXPECT_EQ(q.degree(), 5u);
}

TEST(NonUniformEncoder, SwitchesSourceWhenBlockTooSmall) {
  Rng rng(2);
  const auto s1 = SourceBlock::random(SourceId::S1, 2, 8, rng);
  const auto s2 = SourceBlock::random(SourceId::S2, 10, 8, rng);
  NonUniformEncoder nu(s1, s2, {5}, point_mass(12, 5));
  for (int i = 0; i < 200; ++i) ASSERT_TRUE(nu.next(rng).s2_only());
}

TEST(NonUniformEncoder, RejectsDegreesOutsideRange) {
  Rng rng(2);
  const auto s1 = SourceBlock::random(SourceId::S1, 5, 8, rng);
  const auto s2 = SourceBlock::random(SourceId::S2, 5, 8, rng);
  const auto mu = build_rsd(10, 0.05, 0.5);
  EXPECT_THROW(NonUniformEncoder(s1, s2, {1}, mu), ParameterError);
  EXPECT_THROW(NonUniformEncoder(s1, s2, {6}, mu), ParameterError);
  EXPECT_NO_THROW(NonUniformEncoder(s1, s2, {2, 5}, mu));
}
