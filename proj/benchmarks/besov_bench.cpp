#include <benchmark/benchmark.h>

#include "besov/approx.hpp"
#include "besov/families.hpp"
#include "besov/norms.hpp"
#include "besov/operator.hpp"

namespace {

const besov::QuadratureConfig cfg;

void BM_BesovNormCayley(benchmark::State& state) {
  const auto f = besov::cayley(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(besov::besov_norm(f, cfg).value);
}
BENCHMARK(BM_BesovNormCayley)->Arg(2)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_CayleyHp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(besov::cayley_hp(n, cfg).value);
}
BENCHMARK(BM_CayleyHp)->Arg(16)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Reproduce(benchmark::State& state) {
  const auto f = besov::exp_reciprocal(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(besov::reproduce(f, {0.5, 1.0}, besov::ReproduceVariant::First, cfg).value);
  }
}
BENCHMARK(BM_Reproduce)->Unit(benchmark::kMillisecond);

void BM_ApplyCalculus(benchmark::State& state) {
  const besov::MatrixOperator a(besov::random_stable_matrix(1, static_cast<int>(state.range(0))));
  const auto f = besov::exp_reciprocal(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(besov::apply_calculus(f, a, cfg).value(0, 0));
}
BENCHMARK(BM_ApplyCalculus)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_QTriangleMeasure(benchmark::State& state) {
  const auto f = besov::resolvent_function(1.0);
  const double n = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(besov::q_triangle_measure(f, n, cfg).atoms().size());
}
BENCHMARK(BM_QTriangleMeasure)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
