// Serial reference vs OpenMP backend on the sweep-heavy kernels.
#include <benchmark/benchmark.h>

#include <vector>

#include "gpspec/enclosure.hpp"
#include "gpspec/pencil.hpp"
#include "gpspec/sweep.hpp"

namespace {

using namespace gpspec;

const ExponentialKernel kTwoTerm({{1.0, 1.0}, {0.2, 1.5}});
const DampingBound kRange(0.5, 0.75);

Backend backend_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Backend::serial : Backend::openmp;
}

void BM_BetaCloud(benchmark::State& state) {
  const auto alphas = log_alpha_grid(20.0, 2e4, static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep::beta_cloud(kTwoTerm, kRange, alphas, 11, backend_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1) * 11);
}

void BM_FdEigenvalues(benchmark::State& state) {
  const int m = static_cast<int>(state.range(1));
  const auto nodes = sample_profile(paraboloid_profile(kRange.b_min(), kRange.b_max()), m);
  const auto ops = discretize_1d(1.0, nodes, kRange);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nonlinear_eigenvalues_fd(ops.a, ops.a_b, kTwoTerm, 50.0, backend_of(state)));
  }
}

}  // namespace

// range(0): 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_BetaCloud)->ArgsProduct({{0, 1}, {64, 512}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FdEigenvalues)->ArgsProduct({{0, 1}, {40, 120}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
