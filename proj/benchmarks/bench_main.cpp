#include <benchmark/benchmark.h>

#include "bitsense/biht.hpp"
#include "bitsense/linalg.hpp"
#include "bitsense/raic.hpp"
#include "bitsense/thresholding.hpp"

using namespace bitsense;

static void BM_TopK(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomStream s(SeedSpec{1, 0});
  Vector v(n);
  for (auto& x : v) x = s.next_normal();
  for (auto _ : state) benchmark::DoNotOptimize(top_k(v, 10));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TopK)->Arg(1000)->Arg(100000);

static void BM_SignMeasure(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto a = MeasurementMatrix::gaussian(m, 200, SeedSpec{2, 0});
  const auto x = random_sparse_unit(200, 5, SeedSpec{3, 0});
  for (auto _ : state) benchmark::DoNotOptimize(sign_measure(a, x.values()));
}
BENCHMARK(BM_SignMeasure)->Arg(1000)->Arg(10000);

static void BM_BihtStep(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto a = MeasurementMatrix::gaussian(m, 200, SeedSpec{4, 0});
  const auto x = random_sparse_unit(200, 5, SeedSpec{5, 0});
  const auto start = random_sparse_unit(200, 5, SeedSpec{6, 0});
  const SignPattern b = sign_measure(a, x.values());
  for (auto _ : state) benchmark::DoNotOptimize(biht_step(a, b, start, 5, kDefaultEta));
}
BENCHMARK(BM_BihtStep)->Arg(1000)->Arg(10000);

static void BM_CorrectionMap(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto a = MeasurementMatrix::gaussian(m, 200, SeedSpec{7, 0});
  const auto x = random_sparse_unit(200, 5, SeedSpec{8, 0});
  const auto y = random_sparse_unit(200, 5, SeedSpec{9, 0});
  for (auto _ : state) benchmark::DoNotOptimize(correction_map(a, x.values(), y.values()));
}
BENCHMARK(BM_CorrectionMap)->Arg(1000)->Arg(10000);
BENCHMARK_MAIN();
