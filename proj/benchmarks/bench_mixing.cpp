#include <benchmark/benchmark.h>

#include "qrmix/action.hpp"
#include "qrmix/mixing.hpp"
#include "qrmix/recurrence.hpp"

namespace {

void BM_MixingError(benchmark::State& state, const char* descriptor, qrmix::ActionKind kind) {
  const qrmix::Group g = qrmix::build_group(descriptor);
  const qrmix::ActionTable a = qrmix::ActionTable::build(g, kind);
  const auto f1 = qrmix::random_observable(a.space(), 1);
  const auto f2 = qrmix::random_observable(a.space(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(qrmix::mixing_error(a, f1, f2));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.order() * g.order()));
}
BENCHMARK_CAPTURE(BM_MixingError, sl2_7_right, "sl2:7", qrmix::ActionKind::right)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MixingError, sl2_7_conj, "sl2:7", qrmix::ActionKind::conjugation)
    ->Unit(benchmark::kMillisecond);

void BM_TripleRecurrence(benchmark::State& state, const char* descriptor, std::size_t samples) {
  const qrmix::Group g = qrmix::build_group(descriptor);
  const qrmix::ConjugacyData classes = qrmix::conjugacy_classes(g);
  const auto space = qrmix::ProbabilitySpace::uniform(g.order());
  const auto f1 = qrmix::random_observable(space, 1);
  const auto f2 = qrmix::random_observable(space, 2);
  const auto f3 = qrmix::random_observable(space, 3);
  qrmix::RecurrenceOptions options;
  if (samples > 0) {
    options.mode = qrmix::EvalMode::monte_carlo;
    options.samples = samples;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(qrmix::triple_recurrence_error(g, classes, 3, f1, f2, f3, options).measured_total);
  }
}
BENCHMARK_CAPTURE(BM_TripleRecurrence, sl2_7_exact, "sl2:7", 0)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TripleRecurrence, sl2_37_mc200, "sl2:37", 200)->Unit(benchmark::kMillisecond);

}  // namespace
