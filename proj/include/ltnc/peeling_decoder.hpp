#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ltnc/errors.hpp"
#include "ltnc/packet.hpp"

namespace ltnc {

struct DecodeProgress {
  std::size_t newly_decoded = 0;
  std::size_t total_decoded = 0;
};

/**
 * Incremental belief-propagation (peeling) LT decoder.
 *
 * Messages are addressed by a global index: S1 message i is i, S2 message i
 * is k1 + i. A single-source code uses k2 = 0.
 *
 * State is kept fully reduced: every pending packet's index list excludes
 * all decoded messages, and its payload has had them XOR-ed out.
 */
class PeelingDecoder {
 public:
  PeelingDecoder(std::size_t k1, std::size_t k2, std::size_t payload_size)
      : k1_(k1), k2_(k2), payload_size_(payload_size), known_(k1 + k2, 0),
        values_((k1 + k2) * payload_size, 0), watchers_(k1 + k2) {
    if (k1 + k2 == 0) throw ParameterError("decoder needs at least one message");
  }

  std::size_t k() const { return k1_ + k2_; }
  std::size_t k1() const { return k1_; }
  std::size_t k2() const { return k2_; }
  std::size_t total_decoded() const { return decoded_; }
  std::size_t decoded_s1() const { return decoded_s1_; }
  std::size_t decoded_s2() const { return decoded_ - decoded_s1_; }
  bool complete() const { return decoded_ == k(); }
  bool s1_complete() const { return decoded_s1_ == k1_; }
  std::size_t received_count() const { return received_; }
  /// Packets that reduced to degree 0 on arrival or during peeling.
  std::size_t redundant_count() const { return redundant_; }
  std::size_t pending_count() const { return pending_live_; }

  bool is_decoded(std::size_t global_index) const { return known_.at(global_index) != 0; }

  std::span<const std::uint8_t> message(std::size_t global_index) const {
    if (!is_decoded(global_index)) throw ContractError("message not decoded yet");
    return {values_.data() + global_index * payload_size_, payload_size_};
  }

  /// Index lists of the pending packets (global indices), for inspection.
  std::vector<std::vector<std::uint32_t>> pending_index_sets() const {
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& p : pending_)
      if (p.alive) out.push_back(p.indices);
    return out;
  }

  DecodeProgress push(const CodedPacket& pkt) {
    if (pkt.payload.size() != payload_size_)
      throw FormatError("payload length " + std::to_string(pkt.payload.size()) +
                        " does not match decoder payload size " + std::to_string(payload_size_));
    std::vector<std::uint32_t> indices;
    indices.reserve(pkt.degree());
    for (auto i : pkt.covered_s1) {
      if (i >= k1_) throw ParameterError("S1 index out of range");
      indices.push_back(i);
    }
    for (auto i : pkt.covered_s2) {
      if (i >= k2_) throw ParameterError("S2 index out of range");
      indices.push_back(static_cast<std::uint32_t>(k1_ + i));
    }
    ++received_;

    const std::size_t before = decoded_;
    Pending fresh;
    fresh.payload = pkt.payload;
    for (auto g : indices) {
      if (known_[g])
        xor_into(fresh.payload, value(g));
      else
        fresh.indices.push_back(g);
    }

    if (fresh.indices.empty()) {
      ++redundant_;
    } else if (fresh.indices.size() == 1) {
      resolve(fresh.indices.front(), fresh.payload);
    } else {
      const auto id = static_cast<std::uint32_t>(pending_.size());
      for (auto g : fresh.indices) watchers_[g].push_back(id);
      pending_.push_back(std::move(fresh));
      ++pending_live_;
    }
    return {decoded_ - before, decoded_};
  }

 private:
  struct Pending {
    std::vector<std::uint32_t> indices;
    std::vector<std::uint8_t> payload;
    bool alive = true;
  };

  std::span<std::uint8_t> value(std::size_t g) {
    return {values_.data() + g * payload_size_, payload_size_};
  }

  // Marks `g` decoded with `payload`, then peels until no degree-1 packet remains.
  void resolve(std::uint32_t g, std::span<const std::uint8_t> payload) {
    std::vector<std::uint32_t> ripple;
    mark(g, payload, ripple);
    while (!ripple.empty()) {
      const std::uint32_t id = ripple.back();
      ripple.pop_back();
      Pending& p = pending_[id];
      if (!p.alive) continue;
      p.alive = false;
      --pending_live_;
      if (p.indices.size() != 1) {
        ++redundant_;
        continue;
      }
      mark(p.indices.front(), p.payload, ripple);
    }
  }

  void mark(std::uint32_t g, std::span<const std::uint8_t> payload,
            std::vector<std::uint32_t>& ripple) {
    if (known_[g]) throw ConsistencyError("message decoded twice");
    known_[g] = 1;
    std::copy(payload.begin(), payload.end(), value(g).begin());
    ++decoded_;
    if (g < k1_) ++decoded_s1_;

    for (auto id : watchers_[g]) {
      Pending& p = pending_[id];
      if (!p.alive) continue;
      auto it = std::find(p.indices.begin(), p.indices.end(), g);
      if (it == p.indices.end()) continue;
      *it = p.indices.back();
      p.indices.pop_back();
      xor_into(p.payload, value(g));
      if (p.indices.size() <= 1) ripple.push_back(id);
    }
    watchers_[g].clear();
    watchers_[g].shrink_to_fit();
  }

  std::size_t k1_;
  std::size_t k2_;
  std::size_t payload_size_;
  std::vector<std::uint8_t> known_;
  std::vector<std::uint8_t> values_;
  std::vector<std::vector<std::uint32_t>> watchers_;
  std::vector<Pending> pending_;
  std::size_t decoded_ = 0;
  std::size_t decoded_s1_ = 0;
  std::size_t received_ = 0;
  std::size_t redundant_ = 0;
  std::size_t pending_live_ = 0;
};

inline DecodeProgress decoder_push(PeelingDecoder& dec, const CodedPacket& pkt) {
  return dec.push(pkt);
}

}  // namespace ltnc
