#include <benchmark/benchmark.h>

#include "natave/avenue.hpp"
#include "natave/observable.hpp"
#include "natave/sieve.hpp"

using namespace natave;

static void BM_SieveTable(benchmark::State& state) {
  const u64 span = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    SieveTable table(1, span);
    benchmark::DoNotOptimize(table.spf(span));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(span));
}
BENCHMARK(BM_SieveTable)->Arg(1 << 18)->Arg(1 << 22);

static void BM_ShapeStream(benchmark::State& state) {
  const u64 bound = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    ShapeStream stream(1, bound);
    u64 n;
    std::string_view shape;
    std::size_t total = 0;
    while (stream.next(n, shape)) total += shape.size();
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(bound));
}
BENCHMARK(BM_ShapeStream)->Arg(100000)->Arg(1000000);

static void BM_FirstOccurrences(benchmark::State& state) {
  const u64 bound = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    FirstOccurrenceList list = first_occurrences(bound, ShapeKind::planar);
    benchmark::DoNotOptimize(list.entries.size());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(bound));
}
BENCHMARK(BM_FirstOccurrences)->Arg(100000)->Arg(1000000);

static void BM_TwinMatch(benchmark::State& state) {
  const u64 bound = static_cast<u64>(state.range(0));
  Word twins = make_word({"(())", "*", "(())"});
  for (auto _ : state) {
    OccurrenceReport r = occurrences(twins, bound);
    benchmark::DoNotOptimize(r.positions.size());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(bound));
}
BENCHMARK(BM_TwinMatch)->Arg(100000)->Arg(1000000);

BENCHMARK_MAIN();
