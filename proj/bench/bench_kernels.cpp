// Serial reference kernels against their OpenMP versions.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "cjl/kernels.hpp"

using namespace cjl;

namespace {

const ProfileCurve& curve() {
    static const ProfileCurve c = [] {
        ShootingConfig cfg;
        cfg.spec = ConeSpec(2, 3);
        cfg.s_max = 2000.0;
        return integrate_profile(cfg);
    }();
    return c;
}

std::vector<double> log_points(double lo, double hi, std::size_t n) {
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
    return s;
}

template <kernels::Exec E>
void BM_sample_geometry(benchmark::State& st) {
    const auto s = log_points(1e-3, 1.9e3, static_cast<std::size_t>(st.range(0)));
    std::vector<GeometryPoint> out(s.size());
    std::vector<double> h(s.size());
    for (auto _ : st) {
        kernels::sample_geometry(curve(), s, out, h, E);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <kernels::Exec E>
void BM_plateau_heights(benchmark::State& st) {
    const auto r = log_points(1.0001, 1e3, static_cast<std::size_t>(st.range(0)));
    std::vector<double> v(r.size());
    for (auto _ : st) {
        kernels::plateau_heights(5, 1.0, r, v, E);
        benchmark::DoNotOptimize(v.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <kernels::Exec E>
void BM_weighted_sup(benchmark::State& st) {
    const auto s = log_points(1e-3, 1e4, static_cast<std::size_t>(st.range(0)));
    std::vector<double> h(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) h[i] = std::sin(s[i]) / (1 + s[i]);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::weighted_sup(s, h, 0.5, E));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_sample_geometry<kernels::Exec::serial>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_sample_geometry<kernels::Exec::parallel>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_plateau_heights<kernels::Exec::serial>)->Arg(1 << 10)->Arg(1 << 13);
BENCHMARK(BM_plateau_heights<kernels::Exec::parallel>)->Arg(1 << 10)->Arg(1 << 13);
BENCHMARK(BM_weighted_sup<kernels::Exec::serial>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_weighted_sup<kernels::Exec::parallel>)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
