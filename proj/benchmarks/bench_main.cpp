#include <benchmark/benchmark.h>

#include "epsnet/comparison.hpp"
#include "epsnet/complex.hpp"
#include "epsnet/discretization.hpp"
#include "epsnet/nets.hpp"
#include "epsnet/spaces.hpp"

using namespace epsnet;

static void BM_ProfileIntegral(benchmark::State& state) {
  const ComparisonProfile prof(-1.0, 3.5);
  double r = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prof.integral(r));
    r = r < 5.0 ? r + 0.01 : 0.5;
  }
}
BENCHMARK(BM_ProfileIntegral);

static void BM_BoundN2(benchmark::State& state) {
  const CurvatureDimensionData cd{-1.0, 3.0, 10.0, 3};
  for (auto _ : state) benchmark::DoNotOptimize(bound_n2(cd, 0.3));
}
BENCHMARK(BM_BoundN2);

static void BM_SphereNet(benchmark::State& state) {
  const ModelSpace sphere(ModelKind::kSphere, 2, 1.0, {});
  const Sample smp = sphere.sample(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_net(sphere, smp, 0.2, 1).size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SphereNet)->Arg(20000)->Arg(200000)->Unit(benchmark::kMillisecond);

static void BM_HyperbolicNet(benchmark::State& state) {
  const ModelSpace hyp(ModelKind::kHyperbolic, 2, -1.0, {Region::Shape::kBall, 6.0});
  const Sample smp = hyp.sample(100000, 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_net(hyp, smp, 0.3, 1).size());
}
BENCHMARK(BM_HyperbolicNet)->Unit(benchmark::kMillisecond);

static void BM_FlagComplex(benchmark::State& state) {
  const ModelSpace box(ModelKind::kEuclidean, 3, 0.0, {Region::Shape::kBox, 4.0});
  const Sample smp = box.sample(50000, 2);
  const EpsilonNet net = build_net(box, smp, 0.4, 2);
  const IntersectionPattern pat = intersection_pattern(box, smp, net);
  for (auto _ : state) benchmark::DoNotOptimize(flag_complex(pat, static_cast<int>(state.range(0))).count(1));
}
BENCHMARK(BM_FlagComplex)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_GraphBfs(benchmark::State& state) {
  const ModelSpace box(ModelKind::kEuclidean, 2, 0.0, {Region::Shape::kBox, 20.0});
  const Sample smp = box.sample(100000, 3);
  const EpsilonNet net = build_net(box, smp, 0.3, 3);
  const IntersectionPattern pat = intersection_pattern(box, smp, net);
  const DiscretizationGraph g = build_graph(box, net, pat, smp);
  std::size_t source = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bfs_distances(g, source).back());
    source = (source + 97) % g.num_vertices();
  }
}
BENCHMARK(BM_GraphBfs)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
