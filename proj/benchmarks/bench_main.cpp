#include "galspec/girardeau.hpp"
#include "galspec/hyl.hpp"
#include "galspec/thermolimit.hpp"

#include <benchmark/benchmark.h>

using namespace galspec;

namespace {

void BM_OracleEnumeration(benchmark::State& state) {
    const auto N = static_cast<std::int64_t>(state.range(0));
    girardeau::Params p(BoxSpec::from_side(static_cast<double>(N), 1), N);
    LatticeMomentum v(std::int64_t(2), p.box);
    girardeau::OracleOptions opts;
    opts.index_window = 10;
    opts.energy_cap = 1e300;
    for (auto _ : state) {
        auto raw = girardeau::enumerate_spectrum_raw(p, v, opts);
        benchmark::DoNotOptimize(raw.data());
        state.counters["points"] = static_cast<double>(raw.size());
    }
}
BENCHMARK(BM_OracleEnumeration)->Arg(5)->Arg(7);

void BM_OracleCapped(benchmark::State& state) {
    girardeau::Params p(BoxSpec::from_side(7.0, 1), 7);
    LatticeMomentum v(std::int64_t(2), p.box);
    girardeau::OracleOptions opts;
    opts.index_window = static_cast<int>(state.range(0));
    opts.energy_cap = 30.0;
    for (auto _ : state) {
        auto raw = girardeau::enumerate_spectrum_raw(p, v, opts);
        benchmark::DoNotOptimize(raw.data());
    }
}
BENCHMARK(BM_OracleCapped)->Arg(10)->Arg(14)->Arg(18);

void BM_RestrictedFamily(benchmark::State& state) {
    girardeau::Params p(BoxSpec::from_side(43.0, 1), 43);
    LatticeMomentum v(std::int64_t(7), p.box);
    const int r = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto pts = girardeau::restricted_excitations(p, v, 2.0 * pi * pi, pi, r);
        benchmark::DoNotOptimize(pts.data());
        state.counters["points"] = static_cast<double>(pts.size());
    }
}
BENCHMARK(BM_RestrictedFamily)->Arg(1)->Arg(2)->Arg(3);

void BM_BruteForceMinimum(benchmark::State& state) {
    hyl::Params p(BoxSpec::from_side(6.0, 1), 6, 1.0);
    LatticeMomentum v(std::int64_t(2), p.box);
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto res = hyl::brute_force_minimum(p, v, 3, std::nullopt, 10'000'000, jobs);
        benchmark::DoNotOptimize(&res);
    }
}
BENCHMARK(BM_BruteForceMinimum)->Arg(1)->Arg(2);

void BM_CascadeSweep(benchmark::State& state) {
    thermo::SweepConfig cfg;
    cfg.model = thermo::Model::Girardeau;
    cfg.rho = 1.0;
    cfg.v_lim = 1.0;
    cfg.L_base = 7.0 * pi;
    cfg.n_max = static_cast<int>(state.range(0));
    cfg.cascade_max = 5;
    cfg.spec.energy_cap = 2.0 * pi * pi;
    cfg.spec.momentum_cap = pi;
    cfg.spec.max_excitations = 2;
    for (auto _ : state) {
        auto report = thermo::run_sweep(cfg);
        thermo::limit_points(report);
        benchmark::DoNotOptimize(&report);
    }
}
BENCHMARK(BM_CascadeSweep)->Arg(3)->Arg(6);

void BM_SnapVelocity(benchmark::State& state) {
    BoxSpec box(1.7, 5, 3);
    std::array<double, 3> v{0.83, -1.2, 2.4};
    for (auto _ : state) {
        auto snapped = snap_velocity(v, box);
        benchmark::DoNotOptimize(&snapped);
    }
}
BENCHMARK(BM_SnapVelocity);

} // namespace

BENCHMARK_MAIN();
