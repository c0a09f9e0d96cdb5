#include <benchmark/benchmark.h>

#include "maxsie/linalg.hpp"
#include "maxsie/ops.hpp"
#include "maxsie/solve.hpp"

using namespace maxsie;

namespace
{
const MediumParams kMedium{1.0, 2.0, 1.0, 1.0, 1.0};
}

static void BM_SingleLayer(benchmark::State &state)
{
  const int np = static_cast<int>(state.range(0));
  const SurfaceGrid g = BuildSphereGrid(1.0, np, 2 * np);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(AssembleSingleLayer(g, 1.0).data());
  }
  state.counters["nodes"] = g.Size();
}
BENCHMARK(BM_SingleLayer)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_SystemAssembly(benchmark::State &state)
{
  const int np = static_cast<int>(state.range(0));
  const SurfaceGrid g = BuildSphereGrid(1.0, np, 2 * np);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(AssembleSystem(g, kMedium, 1.0).data());
  }
  state.counters["dofs"] = 6 * g.Size();
}
BENCHMARK(BM_SystemAssembly)->Arg(6)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_DenseLu(benchmark::State &state)
{
  const int np = static_cast<int>(state.range(0));
  const SurfaceGrid g = BuildSphereGrid(1.0, np, 2 * np);
  const CMatrix a = AssembleSystem(g, kMedium, 1.0);
  for (auto _ : state)
  {
    CMatrix f = a;
    const InplaceLu lu(f);
    benchmark::DoNotOptimize(f.data());
  }
  state.counters["dofs"] = a.rows();
}
BENCHMARK(BM_DenseLu)->Arg(6)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_Solve(benchmark::State &state)
{
  const int np = static_cast<int>(state.range(0));
  const SurfaceGrid g = BuildSphereGrid(1.0, np, 2 * np);
  const BlockSystem s = AssembleBlockSystem(g, kMedium, 1.0);
  const IncidentField inc = IncidentPlaneWave(g, kMedium, Vec3::UnitZ(), Vec3::UnitX());
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(Solve(s, inc).residual_norm);
  }
}
BENCHMARK(BM_Solve)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
