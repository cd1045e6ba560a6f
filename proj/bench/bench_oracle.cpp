#include <benchmark/benchmark.h>

#include "psched/generator.hpp"
#include "psched/oracle.hpp"
#include "psched/parallel_machine.hpp"
#include "psched/single_machine.hpp"

namespace {

using namespace psched;

Instance sparse_instance(std::size_t jobs, std::size_t machines, std::uint64_t seed) {
  GenConfig c;
  c.jobs = jobs;
  c.machines = machines;
  c.density = Rational(1, 10);
  c.seed = seed;
  return generate_instance(c);
}

void BM_BruteForceSerial(benchmark::State& state) {
  const Instance inst = sparse_instance(static_cast<std::size_t>(state.range(0)), 1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(opt_single_bruteforce_serial(inst));
}
BENCHMARK(BM_BruteForceSerial)->Arg(8)->Arg(9)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BruteForceOpenMP(benchmark::State& state) {
  const Instance inst = sparse_instance(static_cast<std::size_t>(state.range(0)), 1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(opt_single_bruteforce(inst));
}
BENCHMARK(BM_BruteForceOpenMP)->Arg(8)->Arg(9)->Arg(10)->Unit(benchmark::kMillisecond);

void run_sweep(benchmark::State& state, bool parallel) {
  SweepConfig sweep;
  sweep.seed = 7;
  sweep.count = 200;
  sweep.max_jobs = 9;
  for (auto _ : state) benchmark::DoNotOptimize(verify_sweep(sweep, VerifyMode::kSingle, kDefaultOracleCap, parallel));
}

void BM_SweepSerial(benchmark::State& state) { run_sweep(state, false); }
void BM_SweepOpenMP(benchmark::State& state) { run_sweep(state, true); }
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepOpenMP)->Unit(benchmark::kMillisecond);

void BM_SolveSingle(benchmark::State& state) {
  const Instance inst = sparse_instance(static_cast<std::size_t>(state.range(0)), 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_single(inst));
}
BENCHMARK(BM_SolveSingle)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SolveParallel(benchmark::State& state) {
  const Instance inst = sparse_instance(static_cast<std::size_t>(state.range(0)), 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_parallel(inst));
}
BENCHMARK(BM_SolveParallel)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
