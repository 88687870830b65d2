#include <benchmark/benchmark.h>

#include "tricolor/oracle.hpp"
#include "tricolor/solver.hpp"
#include "tricolor/transform.hpp"

namespace {

using namespace tricolor;

// Every pair has degree three, so simplification alone rarely finishes; the argument is n.
void BM_DeterministicCsp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = oracle::random_pair_regular_csp(n, 3, 3, 3, 3, 17);
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const SolveResult r = solve(inst);
    nodes = r.stats.nodes;
    benchmark::DoNotOptimize(r.status);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_DeterministicCsp)->Arg(20)->Arg(30)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Randomized32(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = oracle::planted_csp(n, 3, 3, 3 * n, 23).first;
  SolverConfig cfg;
  cfg.mode = SolverMode::Randomized32;
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst, cfg).status);
}
BENCHMARK(BM_Randomized32)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_SatThroughCsp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Cnf f = oracle::random_3cnf(n, 4 * n, 5);
  for (auto _ : state) {
    const SatTranslation tr = sat_to_csp(f);
    if (!tr.unsat) benchmark::DoNotOptimize(solve(tr.instance).status);
  }
}
BENCHMARK(BM_SatThroughCsp)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace
