#include <benchmark/benchmark.h>

#include "sphcoord/cohomology.hpp"
#include "sphcoord/energy.hpp"
#include "sphcoord/optimizer.hpp"
#include "sphcoord/synth.hpp"

using namespace sphcoord;

namespace {

DistanceMatrix sphere_distances(std::size_t n) {
  return DistanceMatrix::euclidean(gen_sphere(n, 0.0, SphereSampling::kFibonacci, 3, 1).cloud);
}

void BM_BuildVr(benchmark::State& state) {
  const DistanceMatrix d = sphere_distances(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_vr(d, 3, 0.8));
}
BENCHMARK(BM_BuildVr)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Barcode2(benchmark::State& state) {
  const FilteredComplex c = build_vr(sphere_distances(static_cast<std::size_t>(state.range(0))), 3, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(compute_barcode(c, 2, 47));
  state.counters["simplices"] = static_cast<double>(c.size());
}
BENCHMARK(BM_Barcode2)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

SphericalMapState sphere_map(std::size_t n) {
  const FilteredComplex c = build_vr(sphere_distances(n), 3, 0.8);
  const Barcode b = compute_barcode(c, 2, 47);
  const Bar& bar = select_bar(b);
  const double eps = default_epsilon(bar, b.scale_limit);
  const FilteredComplex sub = restrict(c, eps);
  return initial_spherical_map(lift_to_integers(cocycle_at(bar, c, eps), sub), sub);
}

void BM_VertexUpdates(benchmark::State& state) {
  const SphericalMapState m = sphere_map(100);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vertex_updates(m, EnergyConfig::harmonic(), threads));
  state.counters["triangles"] = static_cast<double>(m.triangles.size());
}
BENCHMARK(BM_VertexUpdates)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_OptimizerIterations(benchmark::State& state) {
  const SphericalMapState m = sphere_map(100);
  OptimizerConfig o;
  o.max_iters = 20;
  for (auto _ : state) benchmark::DoNotOptimize(minimize_spherical(m, EnergyConfig::harmonic(), o));
}
BENCHMARK(BM_OptimizerIterations)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
