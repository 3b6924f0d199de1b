#include <benchmark/benchmark.h>

#include <random>
#include <variant>

#include "patcoh/catalog.hpp"
#include "patcoh/invariants.hpp"
#include "patcoh/linalg.hpp"
#include "patcoh/orbits.hpp"

namespace {

using namespace patcoh;

IntMatrix random_matrix(std::size_t rows, std::size_t cols, long bound, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

void BM_Hnf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix m = random_matrix(n, n, 20, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hnf(m));
}
BENCHMARK(BM_Hnf)->Arg(4)->Arg(8)->Arg(12);

void BM_Snf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix m = random_matrix(n, n, 20, 2);
  for (auto _ : state) benchmark::DoNotOptimize(snf(m));
}
BENCHMARK(BM_Snf)->Arg(4)->Arg(8)->Arg(12);

// 6 integer unknowns against 2 real ones: the shape of a codimension-3 intersection query
void BM_MixedSolve(benchmark::State& state) {
  const IntMatrix ai = random_matrix(6, 6, 5, 3), bi = random_matrix(6, 2, 5, 4);
  const RatMatrix a = to_rational(ai), b = to_rational(bi);
  std::vector<Rat> c(6);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(static_cast<long>(i) - 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(mixed_solve(a, b, c));
}
BENCHMARK(BM_MixedSolve);

void BM_EnumerateDanzer(benchmark::State& state) {
  const ProjectionData data = catalog::build("danzer").data;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_arrangement(data));
}
BENCHMARK(BM_EnumerateDanzer)->Unit(benchmark::kMillisecond);

void BM_InvariantsDanzer(benchmark::State& state) {
  const ProjectionData data = catalog::build("danzer").data;
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_ranks(data));
}
BENCHMARK(BM_InvariantsDanzer)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
