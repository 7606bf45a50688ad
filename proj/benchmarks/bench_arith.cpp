#include <benchmark/benchmark.h>

#include "gapforge/bigint.hpp"
#include "gapforge/roots.hpp"

namespace {

void BM_FloorRootBig(benchmark::State& state) {
  const auto r = static_cast<unsigned>(state.range(0));
  gapforge::BigInt n;
  mpz_ui_pow_ui(n.get_mpz_t(), 10'007, 40);
  for (auto _ : state) benchmark::DoNotOptimize(gapforge::floor_root(n, r));
}
BENCHMARK(BM_FloorRootBig)->Arg(2)->Arg(3)->Arg(19)->Arg(40);

void BM_Isqrt64(benchmark::State& state) {
  std::uint64_t n = 0xFFFFFFFFFFFFFFFFULL;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gapforge::isqrt(n));
    n -= 7919;
  }
}
BENCHMARK(BM_Isqrt64);

}  // namespace
