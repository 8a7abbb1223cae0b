#include <benchmark/benchmark.h>

#include "qrmix/character.hpp"
#include "qrmix/conjugacy.hpp"
#include "qrmix/group.hpp"

namespace {

void BM_CharacterDegrees(benchmark::State& state, const char* descriptor) {
  const qrmix::Group g = qrmix::build_group(descriptor);
  const qrmix::ConjugacyData classes = qrmix::conjugacy_classes(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qrmix::character_degrees(g, classes).degrees.size());
  }
}
BENCHMARK_CAPTURE(BM_CharacterDegrees, symmetric_5, "symmetric:5")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CharacterDegrees, sl2_13, "sl2:13")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CharacterDegrees, sl2_37, "sl2:37")->Unit(benchmark::kMillisecond);

void BM_ClassConstants(benchmark::State& state, const char* descriptor) {
  const qrmix::Group g = qrmix::build_group(descriptor);
  const qrmix::ConjugacyData classes = qrmix::conjugacy_classes(g);
  for (auto _ : state) benchmark::DoNotOptimize(qrmix::class_constants(g, classes).a.size());
}
BENCHMARK_CAPTURE(BM_ClassConstants, sl2_13, "sl2:13")->Unit(benchmark::kMillisecond);

}  // namespace
