/**
 * @file sim.hpp
 * @brief Monte Carlo harness for the S1 -> relay(+S2) -> sink pattern.
 *
 * A trial generates fresh source blocks, lets the relay emit one packet per
 * slot according to the scenario, and feeds every emitted packet to a
 * peeling decoder at the sink. N is the number of relay-emitted packets at
 * the first slot where all K = K1 + K2 messages are decoded; the trial
 * succeeds at overhead eps iff N <= ceil(eps K).
 *
 * Scenarios:
 *   StandardLT     one mu_K encoder over the union of both blocks
 *   TimeMultiplex  relay alternates S1's mu_K1 packets with its own mu_K2 packets
 *   Merged         S1 emits mu_K1 packets, relay merges each with S2 messages
 *   NonUniform     mu_K packets whose restricted degrees come from a single source
 *
 * Trial i always uses the RNG substream (seed, i), so sweeps are
 * reproducible regardless of how trials are scheduled on threads.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "ltnc/degree_distribution.hpp"
#include "ltnc/encoder.hpp"
#include "ltnc/errors.hpp"
#include "ltnc/packet.hpp"
#include "ltnc/peeling_decoder.hpp"
#include "ltnc/relay.hpp"
#include "ltnc/rng.hpp"

namespace ltnc {

enum class Scenario { StandardLT, TimeMultiplex, Merged, NonUniform };

enum class AckMode { None, StopRelayingOnS1Decode };

inline const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::StandardLT: return "standard";
    case Scenario::TimeMultiplex: return "multiplex";
    case Scenario::Merged: return "merged";
    case Scenario::NonUniform: return "nonuniform";
  }
  return "?";
}

inline const char* to_string(AckMode a) {
  return a == AckMode::None ? "none" : "stop-on-s1";
}

struct ScenarioConfig {
  Scenario scenario = Scenario::Merged;
  std::set<std::size_t> restricted_degrees;  // NonUniform only
  std::size_t k1 = 100;
  std::size_t k2 = 100;
  double c = 0.05;
  double delta = 0.5;
  std::vector<double> overhead_grid;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  AckMode ack_mode = AckMode::None;
  std::size_t payload_size = 32;
  /// Simulation stops at ceil(max_overhead K) slots; 0 means max(grid) + 0.5.
  double max_overhead = 0.0;
  /// Extension for robustness runs: independent erasures on each hop (0 = lossless).
  double erasure_s1_relay = 0.0;
  double erasure_relay_sink = 0.0;
  /// Worker threads for run_sweep; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  std::size_t k() const { return k1 + k2; }

  double effective_max_overhead() const {
    if (max_overhead > 0.0) return max_overhead;
    return overhead_grid.empty() ? 2.0 : overhead_grid.back() + 0.5;
  }

  void validate() const {
    if (k1 < 1 || k2 < 1) throw ParameterError("k1 and k2 must be >= 1");
    if (trials < 1) throw ParameterError("trials must be >= 1");
    if (overhead_grid.empty()) throw ParameterError("overhead grid is empty");
    for (std::size_t i = 0; i < overhead_grid.size(); ++i) {
      if (!std::isfinite(overhead_grid[i]) || overhead_grid[i] < 1.0)
        throw ParameterError("overhead grid values must be >= 1");
      if (i > 0 && overhead_grid[i] <= overhead_grid[i - 1])
        throw ParameterError("overhead grid must be strictly increasing");
    }
    if (max_overhead != 0.0 && max_overhead < overhead_grid.back())
      throw ParameterError("max overhead below the largest grid point");
    if (payload_size < 1) throw ParameterError("payload size must be >= 1");
    for (double p : {erasure_s1_relay, erasure_relay_sink})
      if (!(p >= 0.0 && p < 1.0)) throw ParameterError("erasure probability must be in [0, 1)");
    const std::size_t kk = k();
    for (auto d : restricted_degrees)
      if (d < 2 || d > kk / 2) throw ParameterError("restricted degrees must lie in 2..floor(K/2)");
    // Distribution parameters are validated by build_rsd.
    (void)build_rsd(k1, c, delta);
  }
};

/// Packet budget ceil(eps K), tolerant of eps K landing a hair above an integer.
inline std::size_t slots_for_overhead(double eps, std::size_t k) {
  const double x = eps * static_cast<double>(k);
  return static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
}

/// Evenly spaced grid lo, lo + step, ... up to hi (inclusive within 1e-9 step).
inline std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw ParameterError("invalid overhead grid bounds");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(n);
  // Snapped to 1e-12 so that e.g. 1.0 + 7 * 0.02 is stored as the double nearest 1.14.
  for (std::size_t i = 0; i < n; ++i) g[i] = std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12;
  return g;
}

struct TrialRecord {
  std::uint64_t trial_index = 0;
  std::optional<std::size_t> packets_to_full_decode;
  std::optional<std::size_t> packets_to_s1_decode;
  std::vector<bool> success;  // one flag per grid point
  std::size_t redundant_packets = 0;
};

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval at 95% confidence.
inline Interval wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The bounds are exactly 0 and 1 at the extremes; rounding would leave them a hair inside.
  const double low = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {low, high};
}

struct SweepResult {
  ScenarioConfig config;
  std::vector<std::size_t> successes;
  std::vector<double> success_rate;
  std::vector<Interval> ci;
  std::size_t trials = 0;
  double duration_seconds = 0.0;
  std::vector<std::optional<std::size_t>> packets_to_full_decode;  // per trial
};

/**
 * Smallest overhead with success rate >= target, linearly interpolated
 * between the bracketing grid points. nullopt if the grid never gets there.
 */
inline std::optional<double> overhead_at_success(const SweepResult& r, double target) {
  const auto& g = r.config.overhead_grid;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (r.success_rate[i] >= target) {
      if (i == 0) return g[0];
      const double r0 = r.success_rate[i - 1];
      const double r1 = r.success_rate[i];
      return g[i - 1] + (target - r0) / (r1 - r0) * (g[i] - g[i - 1]);
    }
  }
  return std::nullopt;
}

/// Distributions and relay tables shared by every trial of one configuration.
class PreparedScenario {
 public:
  /// `union_law` replaces mu_K for StandardLT and NonUniform (size K + 1, normalized).
  explicit PreparedScenario(ScenarioConfig cfg, std::optional<DegreeDistribution> union_law = std::nullopt)
      : cfg_(std::move(cfg)) {
    cfg_.validate();
    switch (cfg_.scenario) {
      case Scenario::StandardLT:
      case Scenario::NonUniform:
        mu_k_ = union_law ? std::move(*union_law) : build_rsd(cfg_.k(), cfg_.c, cfg_.delta);
        if (mu_k_.k() != cfg_.k() || !mu_k_.is_normalized())
          throw ParameterError("union degree law must be normalized over 0..K");
        break;
      case Scenario::TimeMultiplex:
        mu_k1_ = build_rsd(cfg_.k1, cfg_.c, cfg_.delta);
        mu_k2_ = build_rsd(cfg_.k2, cfg_.c, cfg_.delta);
        break;
      case Scenario::Merged:
        mu_k1_ = build_rsd(cfg_.k1, cfg_.c, cfg_.delta);
        mu_k2_ = build_rsd(cfg_.k2, cfg_.c, cfg_.delta);
        plan_ = std::make_shared<const MergePlan>(MergePlan::build(cfg_.k1, cfg_.k2, cfg_.c, cfg_.delta));
        break;
    }
  }

  const ScenarioConfig& config() const { return cfg_; }
  const std::shared_ptr<const MergePlan>& plan() const { return plan_; }
  const DegreeDistribution& mu_k() const { return mu_k_; }
  const DegreeDistribution& mu_k1() const { return mu_k1_; }
  const DegreeDistribution& mu_k2() const { return mu_k2_; }

 private:
  ScenarioConfig cfg_;
  DegreeDistribution mu_k_;
  DegreeDistribution mu_k1_;
  DegreeDistribution mu_k2_;
  std::shared_ptr<const MergePlan> plan_;
};

/// Called with (slot, packet) for every relay-emitted packet, 1-based slot.
using PacketObserver = std::function<void(std::size_t, const CodedPacket&)>;

inline TrialRecord run_trial(const PreparedScenario& prep, std::uint64_t trial_index,
                             const PacketObserver& observe = {}) {
  const ScenarioConfig& cfg = prep.config();
  Rng master = Rng::for_stream(cfg.seed, trial_index);
  Rng data_rng = master.split();
  Rng s1_rng = master.split();
  Rng relay_rng = master.split();
  Rng channel_rng = master.split();

  const SourceBlock s1 = SourceBlock::random(SourceId::S1, cfg.k1, cfg.payload_size, data_rng);
  const SourceBlock s2 = SourceBlock::random(SourceId::S2, cfg.k2, cfg.payload_size, data_rng);
  PeelingDecoder sink(cfg.k1, cfg.k2, cfg.payload_size);

  const bool ack = cfg.ack_mode == AckMode::StopRelayingOnS1Decode;
  const std::size_t max_slots = slots_for_overhead(cfg.effective_max_overhead(), cfg.k());
  auto lost = [](double p, Rng& rng) { return p > 0.0 && rng.uniform() < p; };

  std::function<CodedPacket()> emit;
  std::function<void()> on_s1_ack = [] {};

  std::optional<UnionLtEncoder> union_enc;
  std::optional<NonUniformEncoder> nonuniform_enc;
  std::optional<LtEncoder> s1_enc;
  std::optional<LtEncoder> s2_enc;
  std::optional<MergingRelay> merger;
  TimeMultiplexRelay mux;
  bool s1_acked = false;

  switch (cfg.scenario) {
    case Scenario::StandardLT:
      union_enc.emplace(s1, s2, prep.mu_k());
      emit = [&] { return union_enc->next(s1_rng); };
      break;
    case Scenario::NonUniform:
      nonuniform_enc.emplace(s1, s2, cfg.restricted_degrees, prep.mu_k());
      emit = [&] { return nonuniform_enc->next(s1_rng); };
      break;
    case Scenario::TimeMultiplex:
      s1_enc.emplace(s1, prep.mu_k1());
      s2_enc.emplace(s2, prep.mu_k2());
      emit = [&] {
        // An S1 packet lost before the relay leaves the slot to S2.
        bool s1_missing = false;
        auto s1_stream = [&] {
          CodedPacket p = s1_enc->next(s1_rng);
          if (lost(cfg.erasure_s1_relay, channel_rng)) s1_missing = true;
          return p;
        };
        CodedPacket out = mux.next(s1_stream, *s2_enc, relay_rng);
        if (s1_missing) out = s2_enc->next(relay_rng);
        return out;
      };
      on_s1_ack = [&] { mux.stop_s1(); };
      break;
    case Scenario::Merged:
      s1_enc.emplace(s1, prep.mu_k1());
      merger.emplace(prep.plan(), s2, std::move(relay_rng));
      emit = [&] {
        if (s1_acked) return merger->exclusive();
        CodedPacket in = s1_enc->next(s1_rng);
        if (lost(cfg.erasure_s1_relay, channel_rng)) return merger->exclusive();
        return merger->merge(in);
      };
      break;
  }

  TrialRecord rec;
  rec.trial_index = trial_index;
  for (std::size_t slot = 1; slot <= max_slots; ++slot) {
    const CodedPacket pkt = emit();
    if (observe) observe(slot, pkt);
    if (lost(cfg.erasure_relay_sink, channel_rng)) continue;
    sink.push(pkt);
    if (!rec.packets_to_s1_decode && sink.s1_complete()) {
      rec.packets_to_s1_decode = slot;
      if (ack) {
        s1_acked = true;
        on_s1_ack();
      }
    }
    if (sink.complete()) {
      rec.packets_to_full_decode = slot;
      break;
    }
  }
  rec.redundant_packets = sink.redundant_count();

  if (rec.packets_to_full_decode) {
    for (std::size_t i = 0; i < cfg.k1; ++i)
      if (!std::ranges::equal(sink.message(i), s1.message(i)))
        throw ConsistencyError("sink decoded an S1 message incorrectly");
    for (std::size_t i = 0; i < cfg.k2; ++i)
      if (!std::ranges::equal(sink.message(cfg.k1 + i), s2.message(i)))
        throw ConsistencyError("sink decoded an S2 message incorrectly");
  }

  rec.success.resize(cfg.overhead_grid.size());
  for (std::size_t g = 0; g < cfg.overhead_grid.size(); ++g)
    rec.success[g] = rec.packets_to_full_decode &&
                     *rec.packets_to_full_decode <= slots_for_overhead(cfg.overhead_grid[g], cfg.k());
  return rec;
}

inline TrialRecord run_trial(const ScenarioConfig& cfg, std::uint64_t trial_index) {
  return run_trial(PreparedScenario(cfg), trial_index);
}

inline SweepResult run_sweep(const PreparedScenario& prep) {
  const ScenarioConfig& cfg = prep.config();
  const auto start = std::chrono::steady_clock::now();

  std::vector<TrialRecord> records(cfg.trials);
  std::size_t workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cfg.trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.trials) return;
      try {
        records[i] = run_trial(prep, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(cfg.trials);
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult r;
  r.config = cfg;
  r.trials = cfg.trials;
  const std::size_t n = cfg.overhead_grid.size();
  r.successes.assign(n, 0);
  for (const auto& rec : records) {
    for (std::size_t g = 0; g < n; ++g) r.successes[g] += rec.success[g] ? 1 : 0;
    r.packets_to_full_decode.push_back(rec.packets_to_full_decode);
  }
  for (std::size_t g = 0; g < n; ++g) {
    r.success_rate.push_back(static_cast<double>(r.successes[g]) / static_cast<double>(r.trials));
    r.ci.push_back(wilson_interval(r.successes[g], r.trials));
  }
  r.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline SweepResult run_sweep(const ScenarioConfig& cfg) { return run_sweep(PreparedScenario(cfg)); }

}  // namespace ltnc
