/**
 * @file rng.hpp
 * @brief Seedable, splittable pseudo-random generator shared by every module.
 *
 * The engine is std::mt19937_64. Uniform variates are produced by our own
 * mappings instead of the <random> distributions, whose output differs between
 * standard library implementations; this keeps every packet sequence and
 * every CSV byte-identical across toolchains for a given seed.
 *
 * Substreams: Rng::for_stream(master, index) derives a generator whose state
 * depends only on (master, index), so trial i of a sweep draws the same
 * numbers no matter which thread runs it or in which order.
 */

#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace ltnc {

/// One step of SplitMix64; advances `state` and returns a well-mixed word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed for substream `stream` of `master`.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master;
  const std::uint64_t a = splitmix64(s);
  s = a ^ (stream * 0xD1B54A32D192ED03ULL);
  splitmix64(s);
  return splitmix64(s);
}

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

  static Rng for_stream(std::uint64_t master, std::uint64_t stream) {
    return Rng(substream_seed(master, stream));
  }

  void reseed(std::uint64_t seed) {
    std::uint64_t s = seed;
    std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(s)),
                      static_cast<std::uint32_t>(splitmix64(s)),
                      static_cast<std::uint32_t>(splitmix64(s)),
                      static_cast<std::uint32_t>(splitmix64(s))};
    engine_.seed(seq);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Lemire's multiply-shift with rejection; n > 0.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        x = engine_();
        m = static_cast<__uint128_t>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// True with probability p.
  bool bernoulli(double p) { return uniform() < p; }

  /// Child generator seeded from this one's next output.
  Rng split() { return Rng(engine_()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ltnc
