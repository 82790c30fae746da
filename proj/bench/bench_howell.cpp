// Parallel Howell elimination against the serial reference.

#include <benchmark/benchmark.h>

#include "bockstein/linalg.hpp"
#include "bockstein/rng.hpp"

using namespace bockstein;

namespace {

Mat random_matrix(std::size_t rows, std::size_t cols) {
  Zpn z(3, 4);
  SplitMix64 g(rows * 7919 + cols);
  Mat m(z, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = z.mul(g.below(z.modulus()), z.pow_p(static_cast<int>(g.below(3))));
  return m;
}

void BM_HowellSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Mat m = random_matrix(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(howell_form_serial(m));
}

void BM_HowellParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Mat m = random_matrix(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(howell_form(m));
}

}  // namespace

BENCHMARK(BM_HowellSerial)->Arg(27)->Arg(81)->Arg(243)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HowellParallel)->Arg(27)->Arg(81)->Arg(243)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
