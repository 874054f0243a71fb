#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "sawom/acoustics.hpp"
#include "sawom/bessel.hpp"
#include "sawom/layout.hpp"
#include "sawom/optoelastics.hpp"
#include "sawom/spectra.hpp"

namespace {

using namespace sawom;

void BM_BesselJ0(benchmark::State& state) {
  const double x_max = static_cast<double>(state.range(0));
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel::j0(x));
    x += 1e-3;
    if (x > x_max) x = 0.0;
  }
}
BENCHMARK(BM_BesselJ0)->Arg(10)->Arg(200);

void BM_SynthesizeMode(benchmark::State& state) {
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_mode_field(ModeSpec{}, threads));
}
BENCHMARK(BM_SynthesizeMode)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PhaseMapX(benchmark::State& state) {
  const ModeField mode = synthesize_mode_field(ModeSpec{});
  const MaterialProperties y = material_for_cut(CutLabel::YCut);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrated_phase_map(mode, y, Polarization::X, 1064e-9, threads));
}
BENCHMARK(BM_PhaseMapX)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FocusingCircuit(benchmark::State& state) {
  const MaterialProperties y = material_for_cut(CutLabel::YCut);
  for (auto _ : state) benchmark::DoNotOptimize(generate_focusing_circuit(y, LayoutSpec{}));
}
BENCHMARK(BM_FocusingCircuit)->Unit(benchmark::kMillisecond);

void BM_FitFano(benchmark::State& state) {
  RfTrace t;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (std::size_t i = 0; i < n; ++i) {
    const double f = 72e6 + 28e6 * static_cast<double>(i) / static_cast<double>(n - 1);
    t.frequencies.push_back(f);
    t.complex_values.push_back(s21_fano_model(f, 86.4e6, 1.7e6, {0.3, 0.1}, 0.5, 0.8));
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_resonance(t, LineShape::Fano));
}
BENCHMARK(BM_FitFano)->Arg(201)->Arg(801)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
