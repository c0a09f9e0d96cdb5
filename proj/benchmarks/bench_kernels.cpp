#include <benchmark/benchmark.h>

#include "maxsie/kernels.hpp"
#include "maxsie/spherical_harmonics.hpp"

using namespace maxsie;

static void BM_HelmholtzGreen(benchmark::State &state)
{
  const Vec3 x(0.1, 0.2, 0.3), y(-0.4, 0.5, 0.9);
  const cplx k(1.3, 0.1);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(HelmholtzGreen(k, x, y));
  }
}
BENCHMARK(BM_HelmholtzGreen);

static void BM_GreenDifference(benchmark::State &state)
{
  const WaveNumberPair kp{1.0, 2.0};
  const double r = std::pow(10.0, -double(state.range(0)));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(GreenDifferenceRadialDerivative(kp, r));
  }
}
BENCHMARK(BM_GreenDifference)->DenseRange(0, 6, 2);

static void BM_ZonalKernel(benchmark::State &state)
{
  const int degree = static_cast<int>(state.range(0));
  double t = 0.3;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(ZonalKernel(degree, t));
  }
}
BENCHMARK(BM_ZonalKernel)->Arg(8)->Arg(16)->Arg(32);
