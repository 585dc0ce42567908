#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "ltnc/degree_distribution.hpp"
#include "ltnc/errors.hpp"
#include "ltnc/packet.hpp"
#include "ltnc/rng.hpp"

namespace ltnc {

/**
 * Uniform selection of d distinct indices out of 0..n-1 by partial
 * Fisher-Yates over a persistent permutation. The permutation is not reset
 * between calls: a partial shuffle of any fixed arrangement yields a uniform
 * d-subset, so reuse keeps each call O(d).
 */
class IndexSampler {
 public:
  IndexSampler() = default;
  explicit IndexSampler(std::size_t n) : perm_(n) {
    std::iota(perm_.begin(), perm_.end(), std::uint32_t{0});
  }

  std::size_t population() const { return perm_.size(); }

  /// The returned span stays valid until the next call.
  std::span<const std::uint32_t> sample(std::size_t d, Rng& rng) {
    if (d > perm_.size()) throw ParameterError("cannot draw more indices than the population");
    const std::size_t n = perm_.size();
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(perm_[i], perm_[j]);
    }
    return {perm_.data(), d};
  }

 private:
  std::vector<std::uint32_t> perm_;
};

namespace detail {

inline void fill_payload(CodedPacket& p, const SourceBlock* s1, const SourceBlock* s2,
                         std::size_t payload_size) {
  p.payload.assign(payload_size, 0);
  for (auto i : p.covered_s1) xor_into(p.payload, s1->message(i));
  for (auto i : p.covered_s2) xor_into(p.payload, s2->message(i));
  p.declared_degree = p.degree();
}

}  // namespace detail

/// LT encoder over one source block. The block must outlive the encoder.
class LtEncoder {
 public:
  LtEncoder(const SourceBlock& block, DegreeDistribution dist)
      : block_(&block), dist_(std::move(dist)), sampler_(block.size()) {
    if (dist_.k() != block.size())
      throw ParameterError("degree distribution size does not match the source block");
  }

  const DegreeDistribution& distribution() const { return dist_; }

  CodedPacket next(Rng& rng) { return with_degree(dist_.sample(rng), rng); }

  CodedPacket with_degree(std::size_t d, Rng& rng) {
    if (d < 1 || d > block_->size()) throw ParameterError("packet degree out of range");
    CodedPacket p;
    auto picked = sampler_.sample(d, rng);
    auto& target = block_->id() == SourceId::S2 ? p.covered_s2 : p.covered_s1;
    target.assign(picked.begin(), picked.end());
    std::sort(target.begin(), target.end());
    const SourceBlock* s1 = block_->id() == SourceId::S2 ? nullptr : block_;
    const SourceBlock* s2 = block_->id() == SourceId::S2 ? block_ : nullptr;
    detail::fill_payload(p, s1, s2, block_->payload_size());
    return p;
  }

 private:
  const SourceBlock* block_;
  DegreeDistribution dist_;
  IndexSampler sampler_;
};

/// One LT packet over a single block; allocates a fresh sampler per call.
inline CodedPacket encode_packet(const SourceBlock& block, const DegreeDistribution& dist,
                                 Rng& rng) {
  LtEncoder enc(block, dist);
  return enc.next(rng);
}

/**
 * LT encoder over the union of two blocks (K = K1 + K2). Union index u maps
 * to S1 message u when u < K1, otherwise to S2 message u - K1.
 */
class UnionLtEncoder {
 public:
  UnionLtEncoder(const SourceBlock& s1, const SourceBlock& s2, DegreeDistribution dist)
      : s1_(&s1), s2_(&s2), dist_(std::move(dist)), sampler_(s1.size() + s2.size()) {
    if (s1.payload_size() != s2.payload_size())
      throw FormatError("source blocks use different payload sizes");
    if (dist_.k() != s1.size() + s2.size())
      throw ParameterError("degree distribution size does not match K1 + K2");
  }

  const DegreeDistribution& distribution() const { return dist_; }

  CodedPacket next(Rng& rng) { return with_degree(dist_.sample(rng), rng); }

  CodedPacket with_degree(std::size_t d, Rng& rng) {
    if (d < 1) throw ParameterError("packet degree out of range");
    auto picked = sampler_.sample(d, rng);
    return from_union_indices(picked);
  }

  CodedPacket from_union_indices(std::span<const std::uint32_t> picked) const {
    CodedPacket p;
    const auto k1 = static_cast<std::uint32_t>(s1_->size());
    for (auto u : picked) {
      if (u < k1)
        p.covered_s1.push_back(u);
      else
        p.covered_s2.push_back(u - k1);
    }
    std::sort(p.covered_s1.begin(), p.covered_s1.end());
    std::sort(p.covered_s2.begin(), p.covered_s2.end());
    detail::fill_payload(p, s1_, s2_, s1_->payload_size());
    return p;
  }

 private:
  const SourceBlock* s1_;
  const SourceBlock* s2_;
  DegreeDistribution dist_;
  IndexSampler sampler_;
};

}  // namespace ltnc
