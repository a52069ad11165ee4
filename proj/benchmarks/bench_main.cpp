#include <benchmark/benchmark.h>

#include "pgkit/distribution.hpp"
#include "pgkit/galois.hpp"
#include "pgkit/lu_schedule.hpp"
#include "pgkit/lu_simulator.hpp"
#include "pgkit/matrix_io.hpp"
#include "pgkit/projective_space.hpp"
#include "pgkit/spmv.hpp"

using namespace pgkit;

static void BM_FieldMul(benchmark::State& st) {
  const auto f = GaloisField::make(2, std::uint32_t(st.range(0)));
  const auto els = f.elements();
  std::size_t t = 1;
  FieldElement acc = f.one();
  for (auto _ : st) {
    acc = f.mul(acc, els[t]);
    t = t + 1 == els.size() ? 1 : t + 1;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul)->Arg(5)->Arg(10)->Arg(16);

static void BM_EnumerateP4(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(ProjectiveSpace::build(4, 2u, {0, 1, 2}));
}
BENCHMARK(BM_EnumerateP4)->Unit(benchmark::kMillisecond);

static void BM_ProjectiveDistribution(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(projective_distribution(std::uint32_t(st.range(0))));
}
BENCHMARK(BM_ProjectiveDistribution)->Arg(3)->Arg(13)->Arg(31);

static void BM_Spmv(benchmark::State& st) {
  const auto a = poisson2d(std::uint32_t(st.range(0)));
  const bool projective = st.range(1) != 0;
  const auto dist = projective ? projective_distribution(3) : rowwise_distribution(13);
  SpmvEngine e(dist, tile_matrix(a, 13));
  const std::vector<double> x(a.rows(), 1.0);
  for (auto _ : st) {
    auto log = e.empty_log();
    benchmark::DoNotOptimize(e.multiply(x, log));
  }
  st.SetItemsProcessed(std::int64_t(st.iterations()) * std::int64_t(a.nnz()));
}
BENCHMARK(BM_Spmv)->Args({30, 0})->Args({30, 1})->Args({100, 0})->Args({100, 1});

static void BM_Scheme2Schedule(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(cycle_log(scheme2_schedule(std::uint32_t(st.range(0)))));
}
BENCHMARK(BM_Scheme2Schedule)->Arg(31)->Arg(62)->Arg(93)->Unit(benchmark::kMillisecond);

static void BM_SimulateScheme2(benchmark::State& st) {
  const std::uint32_t B = std::uint32_t(st.range(0));
  const auto s = scheme2_schedule(B);
  const auto a = random_diagdom(744, 1);
  for (auto _ : st) benchmark::DoNotOptimize(simulate(s, a));
}
BENCHMARK(BM_SimulateScheme2)->Arg(31)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK_MAIN();
