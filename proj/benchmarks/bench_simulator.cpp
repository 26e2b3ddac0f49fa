#include <string>

#include <benchmark/benchmark.h>

#include "spherebot/spherebot.hpp"

namespace {

using namespace spherebot;

void BM_ControlTorque(benchmark::State& state) {
  const Scenario sc = preset("fig2");
  for (auto _ : state) {
    benchmark::DoNotOptimize(control_torque(sc.initial, sc.gains, sc.params));
  }
}
BENCHMARK(BM_ControlTorque);

void BM_ClosedLoopStep(benchmark::State& state) {
  const Scenario sc = preset("fig2");
  const StageTorqueFn ctrl = [&](int, const RobotState& s) {
    return control_torque(s, sc.gains, sc.params).torque;
  };
  RobotState s = sc.initial;
  for (auto _ : state) {
    s = step(s, ctrl, sc.params, 1e-3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_ClosedLoopStep);

void BM_SimulatePreset(benchmark::State& state, const std::string& name) {
  const Scenario sc = preset(name);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(sc));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(sc.config.steps()));
}
BENCHMARK_CAPTURE(BM_SimulatePreset, fig2, std::string("fig2"))->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SimulatePreset, fig3, std::string("fig3"))->Unit(benchmark::kMillisecond);

}  // namespace
