#include <benchmark/benchmark.h>

#include "gwprod/gw.hpp"
#include "gwprod/mbar.hpp"
#include "gwprod/verifier.hpp"

using namespace gwprod;

static void BM_StrataEnumeration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mbar::enumerate_strata(n, 0));
}
BENCHMARK(BM_StrataEnumeration)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

static void BM_PairingMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = (n - 3) / 2;
  for (auto _ : state) benchmark::DoNotOptimize(mbar::pairing_matrix(n, k));
}
BENCHMARK(BM_PairingMatrix)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);

static void BM_EvaluateMonomial(benchmark::State& state) {
  // D_123^3 on M_{0,6}
  const auto m = mbar::monomial_from_json(6, {"1,2,3", "1,2,3", "1,2,3"});
  for (auto _ : state) benchmark::DoNotOptimize(mbar::evaluate_monomial(m));
}
BENCHMARK(BM_EvaluateMonomial);

static void BM_WdvvP2(benchmark::State& state) {
  const auto p2 = gw::TargetSpace::p2();
  const CurveClass beta({state.range(0)});
  for (auto _ : state) benchmark::DoNotOptimize(gw::wdvv_number(p2, beta));
}
BENCHMARK(BM_WdvvP2)->DenseRange(3, 6);

static void BM_VerifyProduct(benchmark::State& state) {
  const int d1 = static_cast<int>(state.range(0)), d2 = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(verify::verify_product(d1, d2));
}
BENCHMARK(BM_VerifyProduct)->Args({1, 1})->Args({2, 1})->Args({2, 2})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
