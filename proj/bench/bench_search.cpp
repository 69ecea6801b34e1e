// Serial reference versus the OpenMP kernel of the candidate search.
#include <benchmark/benchmark.h>

#include "qfano/search.hpp"

namespace {

void run(benchmark::State& state, bool parallel) {
  qfano::SearchConfig cfg;
  cfg.q = state.range(0);
  cfg.torsion_order = state.range(1);
  for (auto _ : state) {
    auto res = parallel ? qfano::search_q(cfg) : qfano::search_q_serial(cfg);
    benchmark::DoNotOptimize(res.rows.data());
  }
}

void BM_SearchSerial(benchmark::State& state) { run(state, false); }
void BM_SearchParallel(benchmark::State& state) { run(state, true); }

}  // namespace

BENCHMARK(BM_SearchSerial)->Args({5, 1})->Args({7, 1})->Args({5, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchParallel)->Args({5, 1})->Args({7, 1})->Args({5, 2})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
