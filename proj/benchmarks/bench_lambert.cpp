#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "lambert/propagator.hpp"
#include "lambert/reconstruct.hpp"
#include "lambert/rectilinear.hpp"
#include "lambert/solver.hpp"

using namespace lambert;

static void BM_TofDirect(benchmark::State& state) {
  const double va = -1.0 + 0.5 * state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(rectilinear::tof_direct({2.0, 1.0, va}));
}
BENCHMARK(BM_TofDirect)->DenseRange(0, 3);

static void BM_TofIndirect(benchmark::State& state) {
  const double va = -1.0 + 0.5 * state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(rectilinear::tof_indirect({2.0, 1.0, va}));
}
BENCHMARK(BM_TofIndirect)->DenseRange(0, 3);

static void BM_SolveSimple(benchmark::State& state) {
  const Tail tail = state.range(0) == 0 ? Tail::Direct : Tail::Indirect;
  for (auto _ : state) benchmark::DoNotOptimize(solver::solve_simple({2.0, 1.0}, 3.0, tail));
}
BENCHMARK(BM_SolveSimple)->Arg(0)->Arg(1);

static void BM_TminMultirev(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solver::tmin_multirev({2.0, 1.0}, n));
}
BENCHMARK(BM_TminMultirev)->DenseRange(1, 3);

static void BM_SolveMultirevIndirect(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(solver::solve_multirev_indirect({2.0, 1.0}, 1, 60.0));
}
BENCHMARK(BM_SolveMultirevIndirect)->Unit(benchmark::kMillisecond);

static void BM_Census(benchmark::State& state) {
  const auto p = BoundaryProblem::from_triangle(1.0, 1.5, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(solver::count_solutions(p, 60.0, 3));
}
BENCHMARK(BM_Census)->Unit(benchmark::kMillisecond);

static void BM_Propagate(benchmark::State& state) {
  const kepler::State s{{1.0, 0.0}, {0.2, 1.1}};
  for (auto _ : state) benchmark::DoNotOptimize(kepler::propagate(s, 123.4));
}
BENCHMARK(BM_Propagate);

static void BM_Reconstruct(benchmark::State& state) {
  const auto p = BoundaryProblem::from_triangle(1.0, 1.5, 2.0);
  const auto sol = solver::solve_simple(reduce_to_rectilinear(p), 3.0, Tail::Direct);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct::reconstruct(p, sol));
}
BENCHMARK(BM_Reconstruct);

BENCHMARK_MAIN();
