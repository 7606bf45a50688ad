#include <benchmark/benchmark.h>

#include "gapforge/primality.hpp"
#include "gapforge/sieve.hpp"

namespace {

void BM_SegmentedSieveCount(benchmark::State& state) {
  const auto hi = static_cast<std::uint64_t>(state.range(0));
  const gapforge::SegmentedSieve sieve(hi);
  for (auto _ : state) {
    std::uint64_t count = 0;
    sieve.for_each_prime(2, hi, [&](std::uint64_t) { ++count; });
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SegmentedSieveCount)->RangeMultiplier(10)->Range(1'000'000, 100'000'000)->Unit(benchmark::kMillisecond);

// A window high up the number line; base primes dominate setup.
void BM_SieveHighWindow(benchmark::State& state) {
  const std::uint64_t lo = 1'000'000'000'000ULL;
  const std::uint64_t hi = lo + 10'000'000;
  const gapforge::SegmentedSieve sieve(hi);
  for (auto _ : state) {
    std::uint64_t count = 0;
    sieve.for_each_prime(lo, hi, [&](std::uint64_t) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_SieveHighWindow)->Unit(benchmark::kMillisecond);

void BM_IsPrime64(benchmark::State& state) {
  std::uint64_t n = 0xFFFFFFFFFFFFFFC5ULL;  // the largest 64-bit prime
  for (auto _ : state) {
    benchmark::DoNotOptimize(gapforge::is_prime(n));
    n -= 2;
  }
}
BENCHMARK(BM_IsPrime64);

void BM_IsPrime32(benchmark::State& state) {
  std::uint64_t n = 4'294'967'291ULL;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gapforge::is_prime(n));
    n -= 2;
  }
}
BENCHMARK(BM_IsPrime32);

}  // namespace
