#include <benchmark/benchmark.h>

#include "gapforge/gaps.hpp"
#include "gapforge/inequality.hpp"
#include "gapforge/verify.hpp"

namespace {

using namespace gapforge;

void BM_GapCheckExact(benchmark::State& state) {
  const auto spec = InequalitySpec::make(InequalityId::GAP_LEGENDRE);
  for (auto _ : state) benchmark::DoNotOptimize(check_gap_inequality(spec, 2, 10'000'000).pairs_checked);
}
BENCHMARK(BM_GapCheckExact)->Unit(benchmark::kMillisecond);

void BM_GapCheckGuarded(benchmark::State& state) {
  const auto spec = InequalitySpec::make(InequalityId::GAP_DUSART);
  for (auto _ : state) benchmark::DoNotOptimize(check_gap_inequality(spec, 2, 10'000'000).pairs_checked);
}
BENCHMARK(BM_GapCheckGuarded)->Unit(benchmark::kMillisecond);

// Fast tier disabled: every comparison goes through MPFR.
void BM_GapCheckGuardedMpfrOnly(benchmark::State& state) {
  const auto spec = InequalitySpec::make(InequalityId::GAP_DUSART);
  const GuardConfig guard{false, 64, 512};
  for (auto _ : state) benchmark::DoNotOptimize(check_gap_inequality(spec, 2, 1'000'000, guard).pairs_checked);
}
BENCHMARK(BM_GapCheckGuardedMpfrOnly)->Unit(benchmark::kMillisecond);

void BM_AndricaExtremes(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(extremes(2, 10'000'000).max_andrica);
}
BENCHMARK(BM_AndricaExtremes)->Unit(benchmark::kMillisecond);

void BM_PowerIntervalCubes(benchmark::State& state) {
  const bool early = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(verify_power_interval(3, 1, 2, 2'000, 2, early).size());
}
BENCHMARK(BM_PowerIntervalCubes)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace
