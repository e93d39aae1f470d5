#include <benchmark/benchmark.h>

#include "sdl/forms.hpp"
#include "sdl/potential.hpp"
#include "sdl/stochastic.hpp"

using namespace sdl;

namespace {

WeightSpec power1() { return WeightSpec::two_quadrant(RadialProfile::power(1)); }

MeshParams mesh_of(int n) { return MeshParams{n, n, 1e-3, 2.0, 1.35}; }

FormMatrices build(int n, OriginMode mode) {
  const WeightSpec w = power1();
  const PolarMesh m = PolarMesh::build(mesh_of(n), w);
  return assemble(m, build_topology(m, w, mode), w);
}

void BM_Assemble(benchmark::State& state) {
  const WeightSpec w = power1();
  const PolarMesh m = PolarMesh::build(mesh_of(static_cast<int>(state.range(0))), w);
  const Topology t = build_topology(m, w, OriginMode::Split);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(m, t, w));
  state.SetComplexityN(m.node_count());
}
BENCHMARK(BM_Assemble)->RangeMultiplier(2)->Range(32, 128)->Complexity();

void BM_CapacityGlued(benchmark::State& state) {
  const FormMatrices g = build(static_cast<int>(state.range(0)), OriginMode::Glued);
  for (auto _ : state) benchmark::DoNotOptimize(capacity(g, g.topology.origin_nodes, 1.0).value);
}
BENCHMARK(BM_CapacityGlued)->RangeMultiplier(2)->Range(32, 128);

void BM_HittingSplit(benchmark::State& state) {
  const FormMatrices s = build(static_cast<int>(state.range(0)), OriginMode::Split);
  for (auto _ : state) benchmark::DoNotOptimize(hitting_probs_split(s));
}
BENCHMARK(BM_HittingSplit)->RangeMultiplier(2)->Range(32, 128);

void BM_TwoPoint(benchmark::State& state) {
  const FormMatrices s = build(32, OriginMode::Split);
  const FormMatrices k = build(32, OriginMode::Killed);
  const Eigen::VectorXd g = Eigen::VectorXd::Ones(s.topology.mesh_nodes);
  for (auto _ : state) benchmark::DoNotOptimize(verify_two_point(s, k, 1.0, g));
}
BENCHMARK(BM_TwoPoint)->Unit(benchmark::kMillisecond);

void BM_Walk(benchmark::State& state) {
  const FormMatrices g = build(32, OriginMode::Glued);
  WalkConfig c;
  c.start = g.mesh.node(20, 3);
  c.paths = 1000;
  c.r_lo = 0.002;
  c.r_hi = 0.01;
  c.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(walk_sample(g, c));
  state.SetItemsProcessed(state.iterations() * c.paths);
}
BENCHMARK(BM_Walk)->Unit(benchmark::kMillisecond);

void BM_Bessel(benchmark::State& state) {
  BesselConfig c;
  c.a = 0.1;
  c.dt = 1e-3;
  c.paths = 2000;
  c.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(bessel_hit_estimate(c));
  state.SetItemsProcessed(state.iterations() * c.paths);
}
BENCHMARK(BM_Bessel)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
