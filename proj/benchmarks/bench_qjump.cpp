// Timings for the hot paths: table build, one sweep, one RK4 step and the
// analysis chain on a synthetic record.

#include <benchmark/benchmark.h>

#include <vector>

#include "qjump/commands.hpp"
#include "qjump/hamiltonian.hpp"
#include "qjump/rts.hpp"
#include "qjump/sweep.hpp"
#include "qjump/system.hpp"
#include "qjump/telegraph.hpp"

using namespace qjump;

namespace {

const SweepEngine& engine() {
  static const SweepEngine e(reference_config());
  return e;
}

void BM_EngineBuild(benchmark::State& state) {
  const SystemConfig cfg = reference_config();
  for (auto _ : state) {
    SweepEngine e(cfg);
    benchmark::DoNotOptimize(e.intervals());
  }
}
BENCHMARK(BM_EngineBuild)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_RunSweep(benchmark::State& state) {
  const auto& e = engine();
  std::size_t k = 0;
  const TlsState tls = state.range(0) ? TlsState::e : TlsState::g;
  for (auto _ : state) {
    UniformStream stream(1, k);
    const auto out = e.run_sweep(TlsOccupation{tls, k}, stream, k);
    benchmark::DoNotOptimize(out.event.switching_current);
    ++k;
  }
}
BENCHMARK(BM_RunSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_EvolveStep(benchmark::State& state) {
  const SystemConfig cfg = reference_config();
  const HamiltonianSpec spec = cfg.hamiltonian_at(35.68e-6);
  const Frame frame = state.range(0) ? Frame::lab : Frame::rotating;
  StateVector psi = StateVector::basis(Level::a, frame);
  for (auto _ : state) {
    const auto r = evolve_step(psi, spec, 1e-9);
    benchmark::DoNotOptimize(r.state.amplitudes);
  }
}
BENCHMARK(BM_EvolveStep)->Arg(0)->Arg(1);

void BM_Classify(benchmark::State& state) {
  SynthOptions o;
  o.duration = static_cast<double>(state.range(0));
  const auto currents = synth_trajectory(o).currents();
  for (auto _ : state) benchmark::DoNotOptimize(classify(currents, 3).labels.data());
  state.SetItemsProcessed(state.iterations() * static_cast<long>(currents.size()));
}
BENCHMARK(BM_Classify)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_BandEstimate(benchmark::State& state) {
  SynthOptions o;
  o.duration = 1000;
  const auto currents = synth_trajectory(o).currents();
  for (auto _ : state) benchmark::DoNotOptimize(estimate_band_count(currents).bands);
}
BENCHMARK(BM_BandEstimate)->Unit(benchmark::kMillisecond);

void BM_PowerSpectrum(benchmark::State& state) {
  const auto seq = generate_telegraph(0.236, 2.38, 0.01, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(power_spectrum(seq, 0.01).power.data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PowerSpectrum)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_AnalyzeChain(benchmark::State& state) {
  SynthOptions o;
  o.duration = 10000;
  const auto traj = synth_trajectory(o);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(traj).off_fraction);
}
BENCHMARK(BM_AnalyzeChain)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
