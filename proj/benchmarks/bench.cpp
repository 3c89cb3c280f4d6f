#include <benchmark/benchmark.h>

#include "pigeon/formulas.hpp"

namespace {

void bm_gen_erphp(benchmark::State& state) {
  for (auto _ : state) {
    auto f = pigeon::gen_erphp(5, static_cast<int32_t>(state.range(0)));
    benchmark::DoNotOptimize(f.clauses.size());
  }
}
BENCHMARK(bm_gen_erphp)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
