#include <benchmark/benchmark.h>

#include "slddb/bench.hpp"

namespace {

using namespace slddb;

void run(benchmark::State& state, Engine engine) {
  const auto program = chain_program();
  const auto query = chain_query();
  const auto db = generate_chain(static_cast<std::size_t>(state.range(0)));
  std::size_t derived = 0, nodes = 0;
  for (auto _ : state) {
    auto r = run_engine(engine, program, db, query);
    benchmark::DoNotOptimize(r.answers.data());
    derived = r.facts_derived.value_or(0);
    nodes = r.sld_nodes.value_or(0);
  }
  state.counters["facts_derived"] = static_cast<double>(derived);
  state.counters["sld_nodes"] = static_cast<double>(nodes);
}

void BM_Sld(benchmark::State& s) { run(s, Engine::Sld); }
void BM_Slddb(benchmark::State& s) { run(s, Engine::Slddb); }
void BM_SlddbSingle(benchmark::State& s) { run(s, Engine::SlddbSingle); }
void BM_Magic(benchmark::State& s) { run(s, Engine::Magic); }
void BM_Naive(benchmark::State& s) { run(s, Engine::Naive); }

// slddb includes compilation in every iteration, like the other engines
// include their rewriting.
BENCHMARK(BM_Sld)->RangeMultiplier(4)->Range(4, 256);
BENCHMARK(BM_Slddb)->RangeMultiplier(4)->Range(4, 256);
BENCHMARK(BM_SlddbSingle)->RangeMultiplier(4)->Range(4, 256);
BENCHMARK(BM_Magic)->RangeMultiplier(4)->Range(4, 256);
BENCHMARK(BM_Naive)->RangeMultiplier(4)->Range(4, 64);

void BM_CompileOnly(benchmark::State& state) {
  const auto program = chain_program();
  const auto query = chain_query();
  for (auto _ : state) {
    auto system = explore(program, query, Granularity::Maximal);
    benchmark::DoNotOptimize(system.states.data());
  }
}
BENCHMARK(BM_CompileOnly);

}  // namespace

BENCHMARK_MAIN();
