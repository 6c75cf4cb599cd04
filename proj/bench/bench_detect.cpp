// Serial reference vs OpenMP kernels.
//
//   build/bin/bench_detect --benchmark_filter=Campaign

#include <benchmark/benchmark.h>

#include "polsar/detect.hpp"
#include "polsar/geometry.hpp"
#include "polsar/simulate.hpp"

using namespace polsar;

namespace {

Execution mode(const benchmark::State& state) {
    return state.range(0) ? Execution::Parallel : Execution::Serial;
}

const char* mode_label(const benchmark::State& state) { return state.range(0) ? "parallel" : "serial"; }

void BM_DetectStrip(benchmark::State& state) {
    RandomSource rng(1, 0);
    const auto strip = make_phantom(baseline_phantom(), rng);
    const auto spec = all_polarimetric_detectors()[state.range(1)];
    for (auto _ : state) benchmark::DoNotOptimize(detect(strip, spec, mode(state)).j_hat);
    state.SetLabel(spec.name() + "/" + mode_label(state));
    state.SetItemsProcessed(state.iterations() * strip.size());
}
BENCHMARK(BM_DetectStrip)->ArgsProduct({{0, 1}, {0, 1, 2, 3, 4, 5, 6}})->Unit(benchmark::kMicrosecond);

void BM_Campaign(benchmark::State& state) {
    CampaignConfig cfg;
    cfg.detectors = all_polarimetric_detectors();
    cfg.phantom = baseline_phantom();
    cfg.reps = 32;
    cfg.record_timing = false;
    for (auto _ : state) benchmark::DoNotOptimize(run_campaign(cfg, mode(state)).rows.size());
    state.SetLabel(mode_label(state));
    state.SetItemsProcessed(state.iterations() * cfg.reps);
}
BENCHMARK(BM_Campaign)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_DetectContour(benchmark::State& state) {
    const PointD c{74.5, 74.5};
    RandomSource rng(2, 0);
    const auto img = make_disk_image(150, c, 40.0, sigma_urban(), sigma_forest(), 4.0, rng);
    const auto fan = circular_fan(c, 70.0, 32);
    const auto spec = DetectorSpec::parse("BA");
    for (auto _ : state) {
        benchmark::DoNotOptimize(detect_contour(img, c, fan, spec, 16, mode(state)).contour.spline_samples.size());
    }
    state.SetLabel(mode_label(state));
}
BENCHMARK(BM_DetectContour)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
