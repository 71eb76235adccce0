#include <abmetric/classifier.hpp>
#include <abmetric/config.hpp>

#include <benchmark/benchmark.h>

using namespace abm;

namespace {

Fixture builtin(const std::string& name) {
    return build_fixture(parse_config(builtin_fixture_text(name)));
}

void BM_ScalarPack(benchmark::State& state) {
    const PhiSpec phi = PhiSpec::quadratic();
    for (auto _ : state) {
        benchmark::DoNotOptimize(scalar_pack(phi, 0.2, 0.25, 2));
    }
}
BENCHMARK(BM_ScalarPack);

void BM_JetMul(benchmark::State& state) {
    const Jet a = phi_eval(PhiSpec::quadratic(), 0.2, Jet::kDefaultOrder);
    const Jet b = phi_eval(PhiSpec::randers(), 0.2, Jet::kDefaultOrder);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMul);

void BM_ECurvatureClosed(benchmark::State& state) {
    const Fixture fx = builtin("quadratic-linear2");
    const Vec x = fx.points[0];
    Vec y(2);
    y << 1.0, 0.4;
    const BetaData bd = beta_data(fx.fm.alpha, fx.fm.beta, x, y);
    const ScalarPack pack = scalar_pack(fx.fm.phi, bd.beta / bd.alpha, bd.b2, 2);
    for (auto _ : state) benchmark::DoNotOptimize(e_curvature_closed(pack, bd));
}
BENCHMARK(BM_ECurvatureClosed);

void BM_BhFactor(benchmark::State& state) {
    const PhiSpec phi = PhiSpec::randers_type(2.0, 0.5, -1.0);
    for (auto _ : state) benchmark::DoNotOptimize(bh_factor(phi, 0.3, 3));
}
BENCHMARK(BM_BhFactor);

void BM_SprayOracle(benchmark::State& state) {
    const Fixture fx = builtin("randers-linear2");
    const Vec x = fx.points[0];
    Vec y(2);
    y << 1.0, 0.4;
    for (auto _ : state) benchmark::DoNotOptimize(finsler_spray_oracle(fx.fm, x, y));
}
BENCHMARK(BM_SprayOracle);

void BM_SCurvatureOracle(benchmark::State& state) {
    const Fixture fx = builtin("randers-linear2");
    const Vec x = fx.points[0];
    Vec y(2);
    y << 1.0, 0.4;
    for (auto _ : state) benchmark::DoNotOptimize(s_curvature_oracle(fx.fm, x, y));
}
BENCHMARK(BM_SCurvatureOracle);

void BM_XiProfile81(benchmark::State& state) {
    const PhiSpec phi = PhiSpec::randers();
    const auto grid = linspace(-0.4, 0.4, 81);
    for (auto _ : state) benchmark::DoNotOptimize(xi_profile(phi, 0.25, 2, grid));
}
BENCHMARK(BM_XiProfile81);

void BM_EquivalenceCheck(benchmark::State& state) {
    const Fixture fx = builtin("randers-parallel2");
    for (auto _ : state) benchmark::DoNotOptimize(equivalence_check(fx.fm, fx.points[0], 8, 1));
}
BENCHMARK(BM_EquivalenceCheck);

}  // namespace

BENCHMARK_MAIN();
