#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "ltnc/errors.hpp"
#include "ltnc/rng.hpp"

namespace ltnc {

enum class SourceId : std::uint8_t { S1, S2, Single };

inline const char* to_string(SourceId id) {
  switch (id) {
    case SourceId::S1: return "S1";
    case SourceId::S2: return "S2";
    case SourceId::Single: return "SINGLE";
  }
  return "?";
}

inline void xor_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  if (dst.size() != src.size()) throw FormatError("payload length mismatch in xor");
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

/// K fixed-length messages owned by one source, stored contiguously.
class SourceBlock {
 public:
  SourceBlock(SourceId id, const std::vector<std::vector<std::uint8_t>>& messages) : id_(id) {
    if (messages.empty()) throw ParameterError("source block needs at least one message");
    payload_size_ = messages.front().size();
    data_.reserve(messages.size() * payload_size_);
    for (const auto& m : messages) {
      if (m.size() != payload_size_) throw FormatError("source messages must share one length");
      data_.insert(data_.end(), m.begin(), m.end());
    }
    k_ = messages.size();
  }

  static SourceBlock random(SourceId id, std::size_t k, std::size_t payload_size, Rng& rng) {
    if (k < 1) throw ParameterError("source block needs at least one message");
    SourceBlock b;
    b.id_ = id;
    b.k_ = k;
    b.payload_size_ = payload_size;
    b.data_.resize(k * payload_size);
    for (std::size_t off = 0; off < b.data_.size(); off += 8) {
      const std::uint64_t word = rng();
      const std::size_t n = std::min<std::size_t>(8, b.data_.size() - off);
      std::memcpy(b.data_.data() + off, &word, n);
    }
    return b;
  }

  SourceId id() const { return id_; }
  std::size_t size() const { return k_; }
  std::size_t payload_size() const { return payload_size_; }

  std::span<const std::uint8_t> message(std::size_t i) const {
    return {data_.data() + i * payload_size_, payload_size_};
  }

 private:
  SourceBlock() = default;

  SourceId id_ = SourceId::Single;
  std::size_t k_ = 0;
  std::size_t payload_size_ = 0;
  std::vector<std::uint8_t> data_;
};

/**
 * An encoded packet: XOR of the covered messages plus the exact index sets,
 * split by originating source. Packets from a single-source code keep all
 * indices in covered_s1.
 */
struct CodedPacket {
  std::vector<std::uint8_t> payload;
  std::vector<std::uint32_t> covered_s1;
  std::vector<std::uint32_t> covered_s2;
  std::size_t declared_degree = 0;

  std::size_t degree() const { return covered_s1.size() + covered_s2.size(); }
  bool s2_only() const { return covered_s1.empty() && !covered_s2.empty(); }
  bool s1_only() const { return covered_s2.empty() && !covered_s1.empty(); }
};

namespace detail {

inline bool has_duplicates(std::vector<std::uint32_t> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

}  // namespace detail

/// Checks the structural packet invariants; throws FormatError on violation.
inline void validate_structure(const CodedPacket& p) {
  if (p.declared_degree != p.degree())
    throw FormatError("declared degree " + std::to_string(p.declared_degree) +
                      " does not match covered set size " + std::to_string(p.degree()));
  if (p.degree() == 0) throw FormatError("packet covers no messages");
  if (detail::has_duplicates(p.covered_s1) || detail::has_duplicates(p.covered_s2))
    throw FormatError("packet index set contains duplicates");
}

/// XOR of the messages a packet claims to cover. `s2` may be null for single-source packets.
inline std::vector<std::uint8_t> expected_payload(const CodedPacket& p, const SourceBlock& s1,
                                                  const SourceBlock* s2 = nullptr) {
  std::vector<std::uint8_t> out(s1.payload_size(), 0);
  for (auto i : p.covered_s1) xor_into(out, s1.message(i));
  if (!p.covered_s2.empty()) {
    if (s2 == nullptr) throw ParameterError("packet covers S2 messages but no S2 block given");
    for (auto i : p.covered_s2) xor_into(out, s2->message(i));
  }
  return out;
}

}  // namespace ltnc
