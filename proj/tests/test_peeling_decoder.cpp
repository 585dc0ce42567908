#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "ltnc/encoder.hpp"
#include "ltnc/peeling_decoder.hpp"
#include "oracles/gf2_rank.hpp"

using namespace ltnc;

namespace {

CodedPacket make(const SourceBlock& b, std::vector<std::uint32_t> idx) {
  CodedPacket p;
  p.covered_s1 = std::move(idx);
  p.payload = expected_payload(p, b);
  p.declared_degree = p.degree();
  return p;
}

SourceBlock block(std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  return SourceBlock::random(SourceId::Single, k, 8, rng);
}

}  // namespace

TEST(PeelingDecoder, TwoStepPeel) {
  const auto b = block(3, 1);
  PeelingDecoder dec(3, 0, 8);
  EXPECT_EQ(dec.push(make(b, {0, 1})).newly_decoded, 0u);
  EXPECT_EQ(dec.push(make(b, {1, 2})).newly_decoded, 0u);
  const auto prog = dec.push(make(b, {2}));
  EXPECT_EQ(prog.newly_decoded, 3u);
  EXPECT_TRUE(dec.complete());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(std::ranges::equal(dec.message(i), b.message(i)));
  EXPECT_EQ(dec.pending_count(), 0u);
}

TEST(PeelingDecoder, DuplicateAndRedundantPackets) {
  const auto b = block(2, 2);
  PeelingDecoder dec(2, 0, 8);
  dec.push(make(b, {0}));
  dec.push(make(b, {0}));
  EXPECT_EQ(dec.redundant_count(), 1u);
  dec.push(make(b, {0, 1}));
  EXPECT_TRUE(dec.complete());
  dec.push(make(b, {0, 1}));
  EXPECT_EQ(dec.redundant_count(), 2u);
  EXPECT_EQ(dec.received_count(), 4u);
}

TEST(PeelingDecoder, RedundancyDuringRipple) {
  const auto b = block(3, 3);
  PeelingDecoder dec(3, 0, 8);
  dec.push(make(b, {0, 1}));
  dec.push(make(b, {0, 1}));
  dec.push(make(b, {0}));
  EXPECT_EQ(dec.total_decoded(), 2u);
  EXPECT_EQ(dec.redundant_count(), 1u);
}

TEST(PeelingDecoder, RejectsMalformedPackets) {
  const auto b = block(3, 4);
  PeelingDecoder dec(3, 0, 8);
  CodedPacket p = make(b, {0});
  p.payload.resize(7);
  EXPECT_THROW(dec.push(p), FormatError);
  CodedPacket q = make(b, {0});
  q.covered_s1 = {5};
  EXPECT_THROW(dec.push(q), ParameterError);
  CodedPacket r = make(b, {0});
  r.covered_s2 = {0};
  EXPECT_THROW(dec.push(r), ParameterError);
  EXPECT_THROW(dec.message(1), ContractError);
  EXPECT_THROW(PeelingDecoder(0, 0, 8), ParameterError);
}

TEST(PeelingDecoder, TwoSourceAddressing) {
  Rng rng(5);
  const auto s1 = SourceBlock::random(SourceId::S1, 2, 4, rng);
  const auto s2 = SourceBlock::random(SourceId::S2, 2, 4, rng);
  PeelingDecoder dec(2, 2, 4);
  auto pkt = [&](std::vector<std::uint32_t> a, std::vector<std::uint32_t> c) {
    CodedPacket p;
    p.covered_s1 = std::move(a);
    p.covered_s2 = std::move(c);
    p.payload = expected_payload(p, s1, &s2);
    p.declared_degree = p.degree();
    return p;
  };
  dec.push(pkt({0}, {1}));
  dec.push(pkt({}, {1}));
  EXPECT_EQ(dec.decoded_s1(), 1u);
  EXPECT_EQ(dec.decoded_s2(), 1u);
  EXPECT_FALSE(dec.s1_complete());
  dec.push(pkt({1}, {0}));
  dec.push(pkt({0, 1}, {}));
  EXPECT_TRUE(dec.complete());
  EXPECT_TRUE(std::ranges::equal(dec.message(2), s2.message(0)));
  EXPECT_TRUE(std::ranges::equal(dec.message(3), s2.message(1)));
}

TEST(PeelingDecoder, RandomStreamsDecodeBitExact) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const auto b = SourceBlock::random(SourceId::Single, 10, 8, rng);
    LtEncoder enc(b, build_rsd(10, 0.05, 0.5));
    PeelingDecoder dec(10, 0, 8);
    std::size_t last = 0;
    for (int n = 0; n < 200 && !dec.complete(); ++n) {
      dec.push(enc.next(rng));
      ASSERT_GE(dec.total_decoded(), last);
      last = dec.total_decoded();
    }
    ASSERT_TRUE(dec.complete()) << "seed " << seed;
    for (std::size_t i = 0; i < 10; ++i) ASSERT_TRUE(std::ranges::equal(dec.message(i), b.message(i)));
  }
}

TEST(PeelingDecoder, StateStaysFullyReduced) {
  Rng rng(42);
  const auto b = SourceBlock::random(SourceId::Single, 40, 8, rng);
  LtEncoder enc(b, build_rsd(40, 0.05, 0.5));
  PeelingDecoder dec(40, 0, 8);
  for (int n = 0; n < 60; ++n) {
    dec.push(enc.next(rng));
    for (const auto& idx : dec.pending_index_sets()) {
      ASSERT_GE(idx.size(), 2u);
      for (auto g : idx) ASSERT_FALSE(dec.is_decoded(g));
    }
  }
}

TEST(PeelingDecoder, PeelingNeverBeatsGaussianElimination) {
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t k = 2 + rng.below(15);
    const auto b = SourceBlock::random(SourceId::Single, k, 8, rng);
    LtEncoder enc(b, build_rsd(k, 0.05, 0.5));
    PeelingDecoder dec(k, 0, 8);
    std::vector<std::uint64_t> rows;
    const std::size_t n = k + rng.below(k + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = enc.next(rng);
      std::uint64_t mask = 0;
      for (auto x : p.covered_s1) mask |= std::uint64_t{1} << x;
      rows.push_back(mask);
      dec.push(p);
    }
    if (dec.complete()) {
      ASSERT_EQ(oracle::gf2_rank(rows), k);
    }
    ASSERT_LE(dec.total_decoded(), oracle::gf2_rank(rows));
  }
}
