#include <benchmark/benchmark.h>

#include "spinbath/degeneracy.hpp"
#include "spinbath/hp_boson.hpp"
#include "spinbath/ising_exact.hpp"
#include "spinbath/ising_mf.hpp"
#include "spinbath/xy_model.hpp"

using namespace spinbath;

static void BM_DegeneracyTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(degeneracy_table(n, HalfInteger::integer(1)));
}
BENCHMARK(BM_DegeneracyTable)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_ExactIsing(benchmark::State& state) {
  IsingParams p;
  p.n_spins = static_cast<int>(state.range(0));
  p.spin = HalfInteger::integer(1);
  p.temperature = 2.0;
  const auto table = degeneracy_table(p.n_spins, p.spin);
  const auto times = linear_grid(0.0, 20.0, 201);
  for (auto _ : state) benchmark::DoNotOptimize(g_exact(p, table, times));
}
BENCHMARK(BM_ExactIsing)->Arg(100)->Arg(1000);

static void BM_XYEvolution(benchmark::State& state) {
  XYParams p;
  p.mu = 1.0;
  p.spin = HalfInteger::from_twice(1);
  const auto rho = qubit_density(0.5, 0.5);
  const auto times = linear_grid(0.0, 20.0, 41);
  for (auto _ : state) benchmark::DoNotOptimize(coherence_evolution(p, rho, times));
}
BENCHMARK(BM_XYEvolution);

static void BM_BosonSeries(benchmark::State& state) {
  BosonParams p;
  p.spin = HalfInteger::integer(8);
  p.alpha = 0.5;
  p.mu = 3.0;
  p.beta = 0.01;
  const auto times = linear_grid(0.0, 40.0, 401);
  for (auto _ : state) benchmark::DoNotOptimize(boson_coherence_series(p, times));
}
BENCHMARK(BM_BosonSeries);

static void BM_OrderParameter(benchmark::State& state) {
  IsingParams p;
  p.spin = HalfInteger::integer(1);
  p.coupling_j = 2.0;
  p.transverse_w = 1.0;
  p.temperature = 2.52;
  for (auto _ : state) benchmark::DoNotOptimize(solve_order_parameter(p));
}
BENCHMARK(BM_OrderParameter);

BENCHMARK_MAIN();
