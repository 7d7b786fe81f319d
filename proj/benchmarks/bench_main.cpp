#include "hardy/verify.hpp"

#include <benchmark/benchmark.h>

using namespace hardy;

static void BM_WeightAnalysis(benchmark::State& state) {
    const Preset p = make_preset("pol", 4);
    for (auto _ : state) benchmark::DoNotOptimize(analyze_pair(p.omega, p.eta, p.domain));
}
BENCHMARK(BM_WeightAnalysis)->Unit(benchmark::kMillisecond);

static void BM_RadialIntegrate(benchmark::State& state) {
    const RadialGrid g = build_grid({.panels = static_cast<std::size_t>(state.range(0))});
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate(g, [](double r) { return r * r * std::exp(-r); }));
}
BENCHMARK(BM_RadialIntegrate)->Arg(36)->Arg(72)->Arg(144);

static void BM_VerifyRandomField(benchmark::State& state) {
    const Preset p = make_preset("exp");
    const VerifyOptions o = options_for(p);
    const SpinorField f({random_field(-2, 1), random_field(-1, 2), random_field(1, 3), random_field(2, 4)});
    for (auto _ : state) benchmark::DoNotOptimize(verify_inequality(f, p.omega, p.eta, o));
}
BENCHMARK(BM_VerifyRandomField)->Unit(benchmark::kMillisecond);

static void BM_CertifyMinimizer(benchmark::State& state) {
    const Preset p = make_preset("exp");
    for (auto _ : state) benchmark::DoNotOptimize(certify_minimizer(p, {1.0, 0.0, 0.0, 0.0}));
}
BENCHMARK(BM_CertifyMinimizer)->Unit(benchmark::kMillisecond);

static void BM_AngularGram(benchmark::State& state) {
    const AngularGrid grid(24, 48);
    const auto channels = channels_up_to(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dirac_basis_gram(channels, grid));
}
BENCHMARK(BM_AngularGram)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_Oracle3D(benchmark::State& state) {
    const SpinorField f = designated_test_field();
    const auto w = parse_weight("1+r^2");
    const Grid3DConfig cfg{.half_width = 8.0, .cells = static_cast<std::size_t>(state.range(0)), .mass = 0.5};
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_3d([&](const Vec3& x) { return evaluate_field(f, x); }, w, w, cfg));
}
BENCHMARK(BM_Oracle3D)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
