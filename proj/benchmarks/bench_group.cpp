#include <benchmark/benchmark.h>

#include "qrmix/conjugacy.hpp"
#include "qrmix/group.hpp"
#include "qrmix/numeric.hpp"

namespace {

// Random products in a group; table-backed below 4096 elements, kernel-backed above.
void BM_GroupMul(benchmark::State& state, const char* descriptor) {
  const qrmix::Group g = qrmix::build_group(descriptor);
  qrmix::Rng rng(7);
  std::vector<qrmix::Element> xs(4096);
  for (auto& x : xs) x = static_cast<qrmix::Element>(rng.below(g.order()));
  qrmix::Element acc = 0;
  std::size_t i = 0;
  for (auto _ : state) {
    acc = g.mul(acc, xs[i++ & 4095]);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK_CAPTURE(BM_GroupMul, sl2_13, "sl2:13");
BENCHMARK_CAPTURE(BM_GroupMul, sl2_37, "sl2:37");
BENCHMARK_CAPTURE(BM_GroupMul, symmetric_7, "symmetric:7");

void BM_Build(benchmark::State& state, const char* descriptor) {
  for (auto _ : state) benchmark::DoNotOptimize(qrmix::build_group(descriptor).order());
}
BENCHMARK_CAPTURE(BM_Build, sl2_13, "sl2:13")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Build, sl2_37, "sl2:37")->Unit(benchmark::kMillisecond);

void BM_ConjugacyClasses(benchmark::State& state, const char* descriptor) {
  const qrmix::Group g = qrmix::build_group(descriptor);
  for (auto _ : state) benchmark::DoNotOptimize(qrmix::conjugacy_classes(g).class_count());
}
BENCHMARK_CAPTURE(BM_ConjugacyClasses, sl2_13, "sl2:13")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ConjugacyClasses, sl2_37, "sl2:37")->Unit(benchmark::kMillisecond);

}  // namespace
