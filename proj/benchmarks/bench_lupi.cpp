#include <benchmark/benchmark.h>

#include "lupi/oracle.hpp"
#include "lupi/polynomial.hpp"
#include "lupi/solvers.hpp"
#include "lupi/winprob.hpp"

namespace {

void BM_WinProbLast(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lupi::Strategy u = lupi::make_uniform(n);
  for (auto _ : state) benchmark::DoNotOptimize(lupi::win_prob(n, u));
}
BENCHMARK(BM_WinProbLast)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_WinProbVector(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lupi::Strategy u = lupi::make_uniform(n);
  for (auto _ : state) benchmark::DoNotOptimize(lupi::win_prob_vector(u));
}
BENCHMARK(BM_WinProbVector)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_OracleExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lupi::Strategy u = lupi::make_uniform(n);
  for (auto _ : state) benchmark::DoNotOptimize(lupi::exact_win_prob(n, u));
}
BENCHMARK(BM_OracleExact)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  const lupi::Strategy u = lupi::make_uniform(5);
  for (auto _ : state) benchmark::DoNotOptimize(lupi::simulate(u, u, 1'000'000, 1, 1));
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

void BM_BuildZ0(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lupi::build_z0(n));
}
BENCHMARK(BM_BuildZ0)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_SymbolicLast(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lupi::symbolic_ci(n, n));
}
BENCHMARK(BM_SymbolicLast)->DenseRange(4, 6, 1)->Unit(benchmark::kMillisecond);

void BM_SolveNe(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lupi::solve_ne(n));
}
BENCHMARK(BM_SolveNe)->Arg(9)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
