#include <benchmark/benchmark.h>

#include <vector>

#include "tribody/events.hpp"
#include "tribody/shape_frame.hpp"

namespace {

using namespace tribody;

const std::vector<Planar> kShape{{-1.0, 0.0}, {1.0, 0.0}, {0.3, 0.7}};

void BM_FrameFromShape(benchmark::State& state) {
  const MassSystem sys({4.0, 2.0, 1.0}, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(frame_from_shape(kShape, sys).rho);
}
BENCHMARK(BM_FrameFromShape);

void BM_RhoBothRoutes(benchmark::State& state) {
  const MassSystem sys({4.0, 2.0, 1.0}, 1.0);
  const auto f = frame_from_shape(kShape, sys);
  for (auto _ : state) benchmark::DoNotOptimize(rho_of(f.Q, sys, f.mu).rho2_E);
}
BENCHMARK(BM_RhoBothRoutes);

// range(0) RK4 steps over a fixed tau span.
void BM_CandidateFlow(benchmark::State& state) {
  const MassSystem sys({1.0, 1.0, 1.0}, 1.0);
  const auto f = frame_from_shape(kShape, sys);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(candidate_flow(f.Q, sys, 1.0, 1, 0.1, steps).back().Delta);
}
BENCHMARK(BM_CandidateFlow)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
