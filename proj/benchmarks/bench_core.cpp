#include <benchmark/benchmark.h>

#include "entgeo/comgeo.hpp"
#include "entgeo/invsep.hpp"
#include "entgeo/qstate.hpp"

using namespace entgeo;

static void BM_HermitianEig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rho = random_mixed({n, 1}, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(rho.mat()));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_PartialTrace(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto rho = random_mixed({d, d}, d * d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho.mat(), {d, d}, Subsystem::B));
}
BENCHMARK(BM_PartialTrace)->Arg(2)->Arg(4)->Arg(8);

static void BM_GMeasure(benchmark::State& state) {
  const auto rho = random_mixed({2, 2}, 4, 3);
  const MeasureConfig cfg{FKind::Identity, NormKind::Trace};
  for (auto _ : state) benchmark::DoNotOptimize(g_measure(rho, cfg));
}
BENCHMARK(BM_GMeasure);

static void BM_HullMembership(benchmark::State& state) {
  const auto g = gbit_model();
  const auto mn = min_tensor(g, g);
  const auto phi = pr_box();
  for (auto _ : state) benchmark::DoNotOptimize(hull_distance(phi.coords, mn));
}
BENCHMARK(BM_HullMembership);

static void BM_EnumerateGbitMax(benchmark::State& state) {
  const auto g = gbit_model();
  const auto h = max_tensor_constraints(g, g);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_max_vertices(h));
}
BENCHMARK(BM_EnumerateGbitMax)->Unit(benchmark::kMillisecond);

static void BM_LambdaTau(benchmark::State& state) {
  Rng rng(4);
  StatePolytope c{{2, 2}, {}};
  for (int i = 0; i < state.range(0); ++i) c.vertices.push_back(random_mixed({2, 2}, 4, rng));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_tau(c));
}
BENCHMARK(BM_LambdaTau)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
