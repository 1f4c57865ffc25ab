#include <benchmark/benchmark.h>

#include "tfz/analytic.hpp"
#include "tfz/experiments.hpp"
#include "tfz/noise.hpp"
#include "tfz/zeros.hpp"

using namespace tfz;

static void BM_SpectrogramClosedForm(benchmark::State& state)
{
    const SignalModel s = make_chirp_pair(-1.0, 0.0, 0.4, 100.0, 40.0);
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(analytic::spectrogram(s, {x, 0.3}));
        x += 1e-6;
    }
}
BENCHMARK(BM_SpectrogramClosedForm);

static void BM_IntensityViaBargmann(benchmark::State& state)
{
    const SignalModel s = make_hermite(10, 400.0);
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(analytic::intensity_via_bargmann(s, {x, 0.3}));
        x += 1e-6;
    }
}
BENCHMARK(BM_IntensityViaBargmann);

static void BM_StftQuadrature(benchmark::State& state)
{
    const SignalModel s = make_linear_chirp(-5.0, 0.4, 100.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(analytic::stft_quadrature(s, {0.5, -3.0}, 1e-9));
    }
}
BENCHMARK(BM_StftQuadrature)->Unit(benchmark::kMicrosecond);

static void BM_SampleGaf(benchmark::State& state)
{
    const auto plan = noise::GafPlan::for_radius(static_cast<double>(state.range(0)));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(noise::sample_gaf(seed++, plan));
    }
    state.SetLabel("degree " + std::to_string(plan.max_degree));
}
BENCHMARK(BM_SampleGaf)->Arg(2)->Arg(3)->Arg(5);

static void BM_FindZerosPureNoise(benchmark::State& state)
{
    const double half = static_cast<double>(state.range(0));
    const auto plan = noise::GafPlan::for_radius(half * std::sqrt(2.0) + 1.0);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const noise::NoisyField f(make_hermite(0, 0.0), noise::sample_gaf(seed++, plan));
        benchmark::DoNotOptimize(zeros::find_zeros(zeros::tf_field(f), {{-half, -half, half, half}, 8.0}));
    }
}
BENCHMARK(BM_FindZerosPureNoise)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_WindingNumberBall(benchmark::State& state)
{
    const Contour ball = Contour::circle({0, 0}, std::sqrt(2.0 / pi));
    const auto plan = noise::GafPlan::for_radius(2.0);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const noise::NoisyField f(make_hermite(2, 20.0), noise::sample_gaf(seed++, plan));
        benchmark::DoNotOptimize(zeros::winding_number(zeros::tf_field(f), ball));
    }
}
BENCHMARK(BM_WindingNumberBall)->Unit(benchmark::kMicrosecond);

static void BM_SupEstimate(benchmark::State& state)
{
    const Contour c = Contour::circle({0, 0}, std::sqrt(1.0 / pi));
    experiments::RunOptions o;
    o.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(experiments::estimate_sup_mean(c, 1000, 256, 1, o));
    }
}
BENCHMARK(BM_SupEstimate)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
