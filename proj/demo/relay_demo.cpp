// Pushes one block of S1 packets through a merging relay and decodes both
// sources at the sink.

#include <cstdio>
#include <memory>

#include "ltnc/ltnc.hpp"

int main() {
  using namespace ltnc;
  constexpr std::size_t k1 = 100;
  constexpr std::size_t k2 = 100;

  Rng rng(2024);
  const SourceBlock s1 = SourceBlock::random(SourceId::S1, k1, 16, rng);
  const SourceBlock s2 = SourceBlock::random(SourceId::S2, k2, 16, rng);

  auto plan = std::make_shared<const MergePlan>(MergePlan::build(k1, k2, 0.05, 0.5));
  LtEncoder s1_encoder(s1, plan->mu_k1());
  MergingRelay relay(plan, s2, rng.split());
  PeelingDecoder sink(k1, k2, 16);

  std::size_t sent = 0;
  while (!sink.complete()) {
    sink.push(relay.merge(s1_encoder.next(rng)));
    ++sent;
  }
  std::printf("decoded %zu messages after %zu relay packets (overhead %.3f)\n", sink.total_decoded(), sent,
              static_cast<double>(sent) / static_cast<double>(k1 + k2));
  std::printf("S2-only output fraction: %.4f\n", plan->exclusive_fraction());
}
