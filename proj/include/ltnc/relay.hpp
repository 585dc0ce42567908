#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ltnc/degree_distribution.hpp"
#include "ltnc/encoder.hpp"
#include "ltnc/errors.hpp"
#include "ltnc/joint_degree_matrix.hpp"
#include "ltnc/packet.hpp"
#include "ltnc/rng.hpp"

namespace ltnc {

/**
 * Immutable data the merging relay draws from: the feasible matrix P_o, the
 * S1 degree law, and what follows from them.
 *
 *   p_s1[j]     column sums of P_o
 *   p_using[j]  p_s1[j] / mu_k1[j], clamped to [0, 1]; 0 where mu_k1[j] = 0
 *   column j    P_o(., j) normalized into a pmf over output degrees
 *
 * Shareable across trials and threads.
 */
class MergePlan {
 public:
  MergePlan(JointDegreeMatrix po, DegreeDistribution mu_k1)
      : po_(std::move(po)), mu_k1_(std::move(mu_k1)) {
    if (mu_k1_.k() != po_.k1()) throw ParameterError("mu_K1 size does not match P_o");
    p_s1_ = marginal_s1(po_);
    p_using_.assign(po_.cols(), 0.0);
    columns_.resize(po_.cols());
    column_mass_.assign(po_.cols(), 0.0);
    for (std::size_t j = 0; j < po_.cols(); ++j) {
      column_mass_[j] = p_s1_[j];
      if (j >= 1 && mu_k1_[j] > 0.0) p_using_[j] = std::clamp(p_s1_[j] / mu_k1_[j], 0.0, 1.0);
      if (p_s1_[j] > 0.0) {
        std::vector<double> pmf(po_.rows(), 0.0);
        for (std::size_t i = 0; i < po_.rows(); ++i) pmf[i] = po_(i, j) / p_s1_[j];
        columns_[j] = DegreeDistribution(std::move(pmf));
      }
    }
  }

  /// P -> P_o for RSD parameters (c, delta) on both the relay and S1.
  static MergePlan build(std::size_t k1, std::size_t k2, double c, double delta) {
    auto mu_k1 = build_rsd(k1, c, delta);
    auto po = compute_po(build_ideal_p(k1, k2, c, delta), mu_k1);
    return MergePlan(std::move(po), std::move(mu_k1));
  }

  const JointDegreeMatrix& po() const { return po_; }
  const DegreeDistribution& mu_k1() const { return mu_k1_; }
  std::size_t k1() const { return po_.k1(); }
  std::size_t k2() const { return po_.k2(); }
  std::span<const double> p_s1() const { return p_s1_; }
  std::span<const double> p_using() const { return p_using_; }

  bool column_has_mass(std::size_t j) const { return column_mass_.at(j) > 0.0; }

  const DegreeDistribution& column_pmf(std::size_t j) const {
    if (!column_has_mass(j))
      throw ConsistencyError("column " + std::to_string(j) + " of P_o carries no mass");
    return columns_[j];
  }

  /// Long-run fraction of S2-only outputs for S1 inputs drawn from mu_k1.
  double exclusive_fraction() const {
    double merged = 0.0;
    for (std::size_t j = 1; j < po_.cols(); ++j) merged += mu_k1_[j] * p_using_[j];
    return 1.0 - merged;
  }

 private:
  JointDegreeMatrix po_;
  DegreeDistribution mu_k1_;
  std::vector<double> p_s1_;
  std::vector<double> p_using_;
  std::vector<double> column_mass_;
  std::vector<DegreeDistribution> columns_;
};

/**
 * Relay co-located with S2 that merges each incoming S1 packet with its own
 * messages, one output per input, without decoding or buffering.
 *
 * Per input of degree j, random draws happen in a fixed order: an output
 * degree variate, the branch variate, then the S2 index draws. The degree
 * variate is inverted on column j when merging and on column 0 otherwise.
 */
class MergingRelay {
 public:
  MergingRelay(std::shared_ptr<const MergePlan> plan, const SourceBlock& s2, Rng rng)
      : plan_(std::move(plan)), s2_(&s2), sampler_(s2.size()), rng_(std::move(rng)) {
    if (!plan_) throw ParameterError("merging relay needs a plan");
    if (s2.size() != plan_->k2()) throw ParameterError("S2 block size does not match the plan");
  }

  const MergePlan& plan() const { return *plan_; }

  CodedPacket merge(const CodedPacket& incoming) {
    const std::size_t j = incoming.declared_degree;
    if (j < 1 || j > plan_->k1() || incoming.covered_s1.size() != j || !incoming.covered_s2.empty())
      throw ParameterError("merge expects an S1 packet whose declared degree is in 1..K1");
    if (incoming.payload.size() != s2_->payload_size())
      throw FormatError("incoming payload size does not match the S2 block");

    const double u_degree = rng_.uniform();
    const double u_branch = rng_.uniform();
    if (u_branch < plan_->p_using()[j]) {
      const std::size_t d = plan_->column_pmf(j).sample_at(u_degree);
      if (d < j || d - j > s2_->size())
        throw ConsistencyError("column pmf produced an inadmissible degree");
      CodedPacket out = incoming;
      add_s2(out, d - j);
      return out;
    }
    return exclusive_with(u_degree);
  }

  /// S2-only packet with degree drawn from column 0.
  CodedPacket exclusive() { return exclusive_with(rng_.uniform()); }

 private:
  CodedPacket exclusive_with(double u_degree) {
    const std::size_t d = plan_->column_pmf(0).sample_at(u_degree);
    if (d < 1 || d > s2_->size()) throw ConsistencyError("column 0 produced an inadmissible degree");
    CodedPacket out;
    out.payload.assign(s2_->payload_size(), 0);
    add_s2(out, d);
    return out;
  }

  void add_s2(CodedPacket& p, std::size_t count) {
    auto picked = sampler_.sample(count, rng_);
    p.covered_s2.assign(picked.begin(), picked.end());
    std::sort(p.covered_s2.begin(), p.covered_s2.end());
    for (auto i : p.covered_s2) xor_into(p.payload, s2_->message(i));
    p.declared_degree = p.degree();
  }

  std::shared_ptr<const MergePlan> plan_;
  const SourceBlock* s2_;
  IndexSampler sampler_;
  Rng rng_;
};

inline CodedPacket merge_packet(MergingRelay& relay, const CodedPacket& incoming) {
  return relay.merge(incoming);
}

/**
 * Baseline relay alternating between forwarding S1's packets verbatim (odd
 * slots) and emitting its own mu_K2 packets (even slots). After stop_s1()
 * every slot carries an S2 packet.
 */
class TimeMultiplexRelay {
 public:
  template <class S1Stream>
  CodedPacket next(S1Stream&& s1_stream, LtEncoder& s2_encoder, Rng& rng) {
    const bool s1_slot = !s1_stopped_ && (slot_++ % 2 == 0);
    if (s1_slot) return s1_stream();
    return s2_encoder.next(rng);
  }

  void stop_s1() { s1_stopped_ = true; }
  bool s1_stopped() const { return s1_stopped_; }
  std::uint64_t slots() const { return slot_; }

 private:
  std::uint64_t slot_ = 0;
  bool s1_stopped_ = false;
};

template <class S1Stream>
CodedPacket multiplex_packet(TimeMultiplexRelay& toggle, S1Stream&& s1_stream, LtEncoder& s2_encoder,
                             Rng& rng) {
  return toggle.next(std::forward<S1Stream>(s1_stream), s2_encoder, rng);
}

/**
 * Encoder over S1 and S2 together that breaks uniform selection: a degree in
 * `restricted` draws all its indices from one source chosen with probability
 * 1/2; other degrees sample uniformly from the union. With an empty set it
 * is identical in law to a standard LT encoder over K1 + K2 messages.
 */
class NonUniformEncoder {
 public:
  NonUniformEncoder(const SourceBlock& s1, const SourceBlock& s2, std::set<std::size_t> restricted,
                    DegreeDistribution dist)
      : s1_(&s1), s2_(&s2), restricted_(std::move(restricted)), dist_(std::move(dist)),
        union_enc_(s1, s2, dist_), s1_sampler_(s1.size()), s2_sampler_(s2.size()) {
    const std::size_t k = s1.size() + s2.size();
    for (auto d : restricted_) {
      if (d < 2 || d > k / 2)
        throw ParameterError("restricted degree " + std::to_string(d) + " outside 2..floor(K/2)");
    }
  }

  const std::set<std::size_t>& restricted() const { return restricted_; }

  CodedPacket next(Rng& rng) {
    const std::size_t d = dist_.sample(rng);
    if (!restricted_.contains(d)) return union_enc_.with_degree(d, rng);

    bool from_s1 = rng.uniform() < 0.5;
    const SourceBlock* chosen = from_s1 ? s1_ : s2_;
    if (d > chosen->size()) {
      from_s1 = !from_s1;
      chosen = from_s1 ? s1_ : s2_;
      if (d > chosen->size()) return union_enc_.with_degree(d, rng);
    }
    CodedPacket p;
    auto& sampler = from_s1 ? s1_sampler_ : s2_sampler_;
    auto picked = sampler.sample(d, rng);
    auto& target = from_s1 ? p.covered_s1 : p.covered_s2;
    target.assign(picked.begin(), picked.end());
    std::sort(target.begin(), target.end());
    detail::fill_payload(p, s1_, s2_, s1_->payload_size());
    return p;
  }

 private:
  const SourceBlock* s1_;
  const SourceBlock* s2_;
  std::set<std::size_t> restricted_;
  DegreeDistribution dist_;
  UnionLtEncoder union_enc_;
  IndexSampler s1_sampler_;
  IndexSampler s2_sampler_;
};

inline CodedPacket encode_nonuniform(const SourceBlock& s1, const SourceBlock& s2,
                                     const std::set<std::size_t>& restricted,
                                     const DegreeDistribution& dist, Rng& rng) {
  NonUniformEncoder enc(s1, s2, restricted, dist);
  return enc.next(rng);
}

}  // namespace ltnc
