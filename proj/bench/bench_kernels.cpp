#include <benchmark/benchmark.h>

#include <random>

#include "crf/flatten.hpp"
#include "crf/linalg.hpp"
#include "crf/series.hpp"

using namespace crf;

namespace {

Series dense_series(int trunc, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-9, 9);
  Series s(2, trunc);
  for (int a = 0; a <= trunc; ++a)
    for (int b = 0; a + b <= trunc; ++b)
      for (int c = 0; a + b + c <= trunc; ++c)
        for (int d = 0; a + b + c + d <= trunc; ++d)
          s.add_term(Exponent(a, b, c, d), GaussianRational(make_rational(coef(rng), 7), make_rational(coef(rng), 5)));
  return s;
}

RationalMatrix random_matrix(size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  RationalMatrix m(n, n);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) m(r, c) = make_rational(num(rng), den(rng));
  return m;
}

void BM_SeriesMulSerial(benchmark::State& state) {
  Series a = dense_series(state.range(0), 1), b = dense_series(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}

void BM_SeriesMulParallel(benchmark::State& state) {
  Series a = dense_series(state.range(0), 1), b = dense_series(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul_parallel(a, b));
}

void BM_RrefSerial(benchmark::State& state) {
  RationalMatrix m = random_matrix(state.range(0), 3);
  for (auto _ : state) {
    RationalMatrix w = m;
    benchmark::DoNotOptimize(rref(w, Exec::Serial));
  }
}

void BM_RrefParallel(benchmark::State& state) {
  RationalMatrix m = random_matrix(state.range(0), 3);
  for (auto _ : state) {
    RationalMatrix w = m;
    benchmark::DoNotOptimize(rref(w, Exec::Parallel));
  }
}

void BM_UniquenessNullspace(benchmark::State& state) {
  Exec exec = state.range(1) ? Exec::Parallel : Exec::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(uniqueness_nullspace(state.range(0), exec).dim());
}

}  // namespace

BENCHMARK(BM_SeriesMulSerial)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeriesMulParallel)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RrefSerial)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RrefParallel)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UniquenessNullspace)->Args({10, 0})->Args({10, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
