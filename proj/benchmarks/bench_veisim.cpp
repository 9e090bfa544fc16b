// Microbenchmarks for the hot paths: full scenario runs, spline resampling,
// rider force integration, and the longitudinal controller.

#include <benchmark/benchmark.h>

#include <vector>

#include "veisim/cap.hpp"
#include "veisim/engine.hpp"
#include "veisim/sfm.hpp"
#include "veisim/traj.hpp"
#include "veisim/variants.hpp"

namespace {

using namespace veisim;

// Synthetic 25 s crossing: eastbound ego, scooter cutting across its path.
ScenarioSpec crossing_spec() {
  ScenarioSpec spec;
  spec.name = "bench-crossing";
  spec.duration = 25.0;

  AgentTrack ego;
  ego.agent_id = "ego";
  ego.kind = AgentKind::Ego;
  ego.keyframes = {{0.0, {{0.0, 0.0}, 0.0}}, {25.0, {{140.0, 0.0}, 0.0}}};

  AgentTrack esc;
  esc.agent_id = "esc-1";
  esc.keyframes = {{0.0, {{80.0, -30.0}, 1.5708}}, {25.0, {{80.0, 30.0}, 1.5708}}};

  spec.tracks = {ego, esc};
  return spec;
}

void BM_RunScenario(benchmark::State& state) {
  const ScenarioSpec spec = crossing_spec();
  const auto id = static_cast<VariantId>(state.range(0));
  for (auto _ : state) {
    SimTrace trace = run_variant(spec, id);
    benchmark::DoNotOptimize(trace.frames.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(spec.duration / spec.dt + 1));
}
BENCHMARK(BM_RunScenario)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_SplineResample(benchmark::State& state) {
  AgentTrack track;
  track.agent_id = "bench";
  const auto knots = static_cast<int>(state.range(0));
  for (int k = 0; k < knots; ++k) {
    const double t = static_cast<double>(k);
    track.keyframes.push_back({t, {{5.0 * t, (k % 2 == 0) ? 1.0 : -1.0}, 0.0}});
  }
  for (auto _ : state) {
    SampledTrajectory traj = cubic_spline_resample(track, 0.05);
    benchmark::DoNotOptimize(traj.poses.data());
  }
}
BENCHMARK(BM_SplineResample)->Arg(4)->Arg(16)->Arg(64);

void BM_SfmStep(benchmark::State& state) {
  const SfmParams params;
  SfmState rider{{0.0, 0.0}, {1.0, 0.0}};
  const Vec2 dest{120.0, 4.0};
  Vec2 veh{-10.0, 0.0};
  for (auto _ : state) {
    veh.x += 0.28;
    if (veh.x > 120.0) veh.x = -10.0;
    const SfmForces forces = total_force(params, RiderProfile::Normal, rider.position,
                                         rider.velocity, dest, veh, {0.0, -1.0});
    rider = sfm_step(params, rider, forces.f_total, 0.05);
    if (rider.position.x > 110.0) rider.position = {0.0, 0.0};
    benchmark::DoNotOptimize(rider);
  }
}
BENCHMARK(BM_SfmStep);

void BM_ComputeCommand(benchmark::State& state) {
  const CapConfig cfg;
  CapState cap;
  double v = cfg.v_des;
  double gap = 60.0;
  for (auto _ : state) {
    gap -= v * 0.05;
    if (gap < cfg.d_buf + 0.5) gap = 60.0;  // reset before contact: cycles both modes
    const auto [cmd, next] = compute_command(cap, v, gap, cfg, 0.05);
    cap = next;
    v = std::max(0.5, v + cmd.accel * 0.05);
    benchmark::DoNotOptimize(cap);
  }
}
BENCHMARK(BM_ComputeCommand);

}  // namespace

BENCHMARK_MAIN();
