// The packaged libbenchmark_main.a carries LTO bytecode from another compiler
// release, so the entry point is provided here.
#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
