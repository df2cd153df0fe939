#include <benchmark/benchmark.h>

#include "twistkit/division.hpp"

using namespace twistkit;

namespace {

// Variant 1 twist of F_{p^n} by Frobenius at c = 0, so that the search has to
// exhaust every pair.
Algebra division_twist(std::uint32_t p, unsigned n) {
  const CyclicExtension e = finite_cyclic_extension(Field::extension(p, n));
  TwistSpec s = TwistSpec::basic(e.k, 1, Vector(n, e.k.field()->zero()));
  s.f = s.g = e.sigma;
  return twist(e.k, s);
}

void BM_ZeroDivisorReference(benchmark::State& state) {
  const Algebra a = division_twist(static_cast<std::uint32_t>(state.range(0)), static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(zero_divisor_reference(a));
}

void BM_ZeroDivisorParallel(benchmark::State& state) {
  const Algebra a = division_twist(static_cast<std::uint32_t>(state.range(0)), static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(zero_divisor_search(a));
}

void BM_ScanReference(benchmark::State& state) {
  const FieldPtr k = Field::extension(3, 3);
  const CyclicExtension e = finite_cyclic_extension(k);
  const Matrix f = frobenius_matrix(k, 1), g = frobenius_matrix(k, 2);
  for (auto _ : state) benchmark::DoNotOptimize(scan_c_reference(e.k, 1, f, g));
}

void BM_ScanParallel(benchmark::State& state) {
  const FieldPtr k = Field::extension(3, 3);
  const CyclicExtension e = finite_cyclic_extension(k);
  const Matrix f = frobenius_matrix(k, 1), g = frobenius_matrix(k, 2);
  for (auto _ : state) benchmark::DoNotOptimize(scan_c(e.k, 1, f, g));
}

}  // namespace

BENCHMARK(BM_ZeroDivisorReference)->Args({3, 3})->Args({5, 3})->Args({3, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZeroDivisorParallel)->Args({3, 3})->Args({5, 3})->Args({3, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
