#include "bcdsat/bench.hpp"
#include "bcdsat/generators.hpp"
#include "bcdsat/solver.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace bcdsat;

namespace {

Formula hardThreeSat(int vars, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return gen::randomKSat(vars, static_cast<int>(vars * 4.26), 3, rng);
}

// Decide every variable once in index order, propagating after each.
void BM_Propagate(benchmark::State &state) {
  std::mt19937_64 rng(1);
  Formula f = gen::randomKSat(static_cast<int>(state.range(0)),
                              static_cast<int>(state.range(0) * 3), 3, rng);
  std::uint64_t props = 0;
  for (auto _ : state) {
    Solver s(f);
    for (Var v = 1; v <= s.numVars(); ++v) {
      if (s.value(v) != LBool::Undef)
        continue;
      s.decide(Lit::negative(v));
      if (s.propagate())
        break;
    }
    props += s.trail().size();
  }
  state.counters["assigned/s"] =
      benchmark::Counter(static_cast<double>(props), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Propagate)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_SolveThreeSat(benchmark::State &state) {
  Formula f = hardThreeSat(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    Solver s(f);
    benchmark::DoNotOptimize(s.solve());
  }
}
BENCHMARK(BM_SolveThreeSat)->Arg(100)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_RunSolverMode(benchmark::State &state) {
  Formula f = gen::pigeonhole(7);
  RunConfig cfg;
  cfg.mode = static_cast<BranchMode>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(runSolver(f, cfg).result.verdict);
  state.SetLabel(std::string(toString(cfg.mode)));
}
BENCHMARK(BM_RunSolverMode)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

} // namespace
