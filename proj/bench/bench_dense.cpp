// OpenMP kernels against their serial references. Run with OMP_NUM_THREADS
// set to compare thread counts; arguments are the state-space size.

#include "orbitmc/parallel/dense.hpp"
#include "orbitmc/parallel/reference.hpp"
#include "orbitmc/random_models.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>

using namespace orbitmc;

namespace {

struct Fixture {
  Distribution pi;
  OrbitPartition part;
  Mat p;
};

Fixture make(std::size_t n) {
  Rng rng(n, 0);
  Distribution pi = random_distribution(n, rng);
  OrbitPartition part = random_partition(n, std::max<std::size_t>(1, n / 8), rng);
  Mat p = random_reversible_kernel(pi, rng).matrix();
  return {std::move(pi), std::move(part), std::move(p)};
}

template <Mat (*F)(const Mat&, const Mat&)>
void bm_multiply(benchmark::State& state) {
  const Fixture f = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(F(f.p, f.p));
}

template <Mat (*F)(const Mat&, const OrbitPartition&, const Distribution&)>
void bm_gibbs_sandwich(benchmark::State& state) {
  const Fixture f = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(F(f.p, f.part, f.pi));
}

template <Mat (*F)(const Mat&, unsigned long long)>
void bm_power(benchmark::State& state) {
  const Fixture f = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(F(f.p, 100));
}

template <double (*F)(const Mat&, const Distribution&)>
void bm_max_tv(benchmark::State& state) {
  const Fixture f = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(F(f.p, f.pi));
}

}  // namespace

BENCHMARK(bm_multiply<serial::multiply>)->Name("multiply/serial")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(bm_multiply<parallel::multiply>)->Name("multiply/openmp")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(bm_gibbs_sandwich<serial::gibbs_sandwich>)->Name("gibbs_sandwich/serial")->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(bm_gibbs_sandwich<parallel::gibbs_sandwich>)->Name("gibbs_sandwich/openmp")->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(bm_power<serial::power>)->Name("power100/serial")->RangeMultiplier(2)->Range(64, 256);
BENCHMARK(bm_power<parallel::power>)->Name("power100/openmp")->RangeMultiplier(2)->Range(64, 256);
BENCHMARK(bm_max_tv<serial::max_tv_distance>)->Name("max_tv/serial")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(bm_max_tv<parallel::max_tv_distance>)->Name("max_tv/openmp")->RangeMultiplier(4)->Range(64, 1024);

BENCHMARK_MAIN();
