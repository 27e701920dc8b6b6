#include <benchmark/benchmark.h>

#include "nyskit/datasets.hpp"
#include "nyskit/kernels.hpp"
#include "nyskit/linalg.hpp"
#include "nyskit/nystrom.hpp"
#include "nyskit/sampling.hpp"

using namespace nyskit;

namespace {

KernelMatrix make_kernel(int n) {
  PointCloud x = fishbowl(n, 0.6, RandomSeed{7, 0});
  return rbf_kernel(x, 0.7);
}

void BM_RbfKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PointCloud x = fishbowl(n, 0.6, RandomSeed{7, 0});
  for (auto _ : state) {
    KernelMatrix q = rbf_kernel(x, 0.7);
    benchmark::DoNotOptimize(q.trace());
  }
}
BENCHMARK(BM_RbfKernel)->Arg(200)->Arg(500);

void BM_Eigh(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  KernelMatrix q = make_kernel(n);
  for (auto _ : state) {
    Spectrum s = eigh(q.base());
    benchmark::DoNotOptimize(s.eigenvalues(0));
  }
}
BENCHMARK(BM_Eigh)->Arg(100)->Arg(300);

void BM_ErrorTrace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  KernelMatrix q = make_kernel(n);
  LandmarkSubset j = uniform_subset(n, k, RandomSeed{1, 0});
  for (auto _ : state) {
    double e = nystrom_error_trace(q, j);
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(BM_ErrorTrace)->Args({200, 10})->Args({500, 20});

void BM_NystromExtend(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  KernelMatrix q = make_kernel(n);
  LandmarkSubset j = uniform_subset(n, k, RandomSeed{1, 0});
  for (auto _ : state) {
    NystromApprox a = nystrom_extend(q, j);
    benchmark::DoNotOptimize(a.eigenvalues(0));
  }
}
BENCHMARK(BM_NystromExtend)->Args({200, 10})->Args({500, 20});

void BM_DetmcChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const long steps = state.range(2);
  KernelMatrix q = make_kernel(n);
  std::uint64_t stream = 0;
  for (auto _ : state) {
    auto [j, diag] = detmc_subset(q, k, DetmcOptions{1.0, steps, false},
                                  RandomSeed{1, stream++});
    benchmark::DoNotOptimize(diag.final_logdet);
  }
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_DetmcChain)->Args({200, 10, 200})->Args({500, 20, 200});

void BM_DetMaxGreedy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  KernelMatrix q = make_kernel(n);
  for (auto _ : state) {
    LandmarkSubset j = det_max_greedy(q, k);
    benchmark::DoNotOptimize(j.size());
  }
}
BENCHMARK(BM_DetMaxGreedy)->Args({200, 10})->Args({500, 20});

}  // namespace

BENCHMARK_MAIN();
