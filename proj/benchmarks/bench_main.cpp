#include <benchmark/benchmark.h>

#include <random>

#include "wlde/kernels.hpp"
#include "wlde/lattice.hpp"
#include "wlde/outbreak.hpp"

namespace {

using namespace wlde;

std::vector<double> random_field(std::size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> f(n);
  for (double& v : f) v = unif(rng);
  return f;
}

void BM_step_gaussian(benchmark::State& state) {
  const int nx = int(state.range(0));
  const LatticeConfig config = LatticeConfig::line(nx);
  const GrowthParams growth(0.32, 0.8);
  const DispersalSetting dispersal(0.3);
  const auto kernel = discretize(KernelSpec::gaussian(1.0), 1, 8);
  LatticeField field;
  field.values = random_field(std::size_t(nx), 1);
  for (auto _ : state) {
    field = step(config, field, growth, dispersal, kernel);
    benchmark::DoNotOptimize(field.values.data());
  }
  state.SetItemsProcessed(state.iterations() * nx);
}
BENCHMARK(BM_step_gaussian)->Arg(400)->Arg(1600);

void BM_step_cauchy_halfgrid(benchmark::State& state) {
  const int nx = int(state.range(0));
  const LatticeConfig config = LatticeConfig::line(nx);
  const GrowthParams growth(0.32, 0.8);
  const DispersalSetting dispersal(0.3);
  const auto kernel = discretize(KernelSpec::cauchy(1.0), 1, (nx - 1) / 2);
  LatticeField field;
  field.values = random_field(std::size_t(nx), 2);
  for (auto _ : state) {
    field = step(config, field, growth, dispersal, kernel);
    benchmark::DoNotOptimize(field.values.data());
  }
  state.SetItemsProcessed(state.iterations() * nx);
}
BENCHMARK(BM_step_cauchy_halfgrid)->Arg(400)->Arg(800);

void BM_convolve_direct(benchmark::State& state) {
  const int nx = int(state.range(0));
  const GridShape grid{1, nx, 1};
  const auto kernel = discretize(KernelSpec::laplace(1.0), 1, 8);
  const auto field = random_field(std::size_t(nx), 3);
  for (auto _ : state) {
    auto out = convolve(field, grid, Boundary::periodic, kernel);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_convolve_direct)->Arg(400)->Arg(1600);

void BM_convolve_spectral(benchmark::State& state) {
  const int nx = int(state.range(0));
  const GridShape grid{1, nx, 1};
  const auto kernel = discretize(KernelSpec::laplace(1.0), 1, 8);
  const auto field = random_field(std::size_t(nx), 4);
  for (auto _ : state) {
    auto out = convolve_spectral(field, grid, kernel);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_convolve_spectral)->Arg(400);

void BM_transform_numeric(benchmark::State& state) {
  const int nx = int(state.range(0));
  const auto kernel = discretize(KernelSpec::cauchy(1.0), 1, (nx - 1) / 2);
  const GridShape grid{1, nx, 1};
  for (auto _ : state) {
    auto amps = transform_numeric(kernel, grid);
    benchmark::DoNotOptimize(amps.data());
  }
}
BENCHMARK(BM_transform_numeric)->Arg(400);

void BM_poisson_binomial(benchmark::State& state) {
  const int m = int(state.range(0));
  const auto p = random_field(std::size_t(m), 5);
  for (auto _ : state) {
    auto pmf = poisson_binomial_pmf(p);
    benchmark::DoNotOptimize(pmf.data());
  }
  state.SetComplexityN(m);
}
BENCHMARK(BM_poisson_binomial)->RangeMultiplier(2)->Range(32, 512)->Complexity();

}  // namespace

BENCHMARK_MAIN();
