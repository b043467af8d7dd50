#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lowdim/approx/builder.hpp"
#include "lowdim/approx/holder.hpp"
#include "lowdim/approx/multiplication.hpp"
#include "lowdim/dimest/estimators.hpp"
#include "lowdim/geometry/cover.hpp"
#include "lowdim/geometry/support.hpp"
#include "lowdim/net/calculus.hpp"

using namespace lowdim;

namespace {

const PointCloud& circle() {
  static const PointCloud pts = geometry::generate_support(
      {.kind = geometry::SupportKind::kSphere, .intrinsic_dim = 1, .ambient_dim = 2}, 10000, 1);
  return pts;
}

void BM_EvaluateBatch(benchmark::State& state) {
  const auto a = approx::build_approximator(approx::sincos_target(), circle(), 1.0, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(a.network.evaluate_batch(circle()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(circle().size()));
}
BENCHMARK(BM_EvaluateBatch)->Unit(benchmark::kMillisecond);

void BM_MaxNet(benchmark::State& state) {
  const auto net = net::max_net(static_cast<std::size_t>(state.range(0)));
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& v : x) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(net.evaluate(x));
}
BENCHMARK(BM_MaxNet)->Arg(4)->Arg(16)->Arg(64);

void BM_SquareNet(benchmark::State& state) {
  const auto net = approx::square_net(static_cast<std::size_t>(state.range(0)), 3);
  const std::vector<double> x{0.37};
  for (auto _ : state) benchmark::DoNotOptimize(net.evaluate(x));
}
BENCHMARK(BM_SquareNet)->Arg(4)->Arg(16)->Arg(64);

void BM_BuildApproximator(benchmark::State& state) {
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(approx::build_approximator(approx::sincos_target(), circle(), 1.0, eps));
}
BENCHMARK(BM_BuildApproximator)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_GridCoverAndPartition(benchmark::State& state) {
  for (auto _ : state) {
    const auto cover = geometry::grid_cover(circle(), 1.0 / static_cast<double>(state.range(0)));
    benchmark::DoNotOptimize(geometry::partition_cover(cover));
  }
}
BENCHMARK(BM_GridCoverAndPartition)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_MlDim(benchmark::State& state) {
  const auto pts = geometry::generate_support(
      {.kind = geometry::SupportKind::kSphere, .intrinsic_dim = 2, .ambient_dim = 5},
      static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(dimest::ml_dim(pts, 10));
}
BENCHMARK(BM_MlDim)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
