#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "shadowing/associated.hpp"
#include "shadowing/expanding.hpp"
#include "shadowing/hyperbolic.hpp"
#include "shadowing/system.hpp"

namespace sh = shadowing;

namespace {

sh::homotopy_pseudo_orbit doubling_hpo(const sh::mv_system& sys, long hi) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    sh::homotopy_pseudo_orbit h;
    h.window = {0, hi, false};
    h.C = 0.0;
    for (long i = 0; i <= hi; ++i) h.points.push_back(sh::make_pt(u(rng)));
    for (long i = 1; i <= hi; ++i) {
        double a = sys.sigma(h.point_at(i - 1)).x.real();
        double delta = h.point_at(i).x.real() - sh::circle_reduce(a);
        delta -= std::round(delta);
        h.paths.push_back(sh::path::segment(sys.X0, sh::make_pt(a), sh::make_pt(a + delta)));
    }
    return h;
}

sh::homotopy_pseudo_orbit horseshoe_hpo(const sh::crossed_system& cs, long hi) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    double disc = std::sqrt(1.21 + 4.0 * 4.79);
    double p = (-1.1 + disc) / 2.0, q = (-1.1 - disc) / 2.0;
    sh::homotopy_pseudo_orbit h;
    h.window = {0, hi, false};
    h.C = 0.0;
    for (long i = 0; i <= hi; ++i) {
        double x = i % 2 == 0 ? p : q;
        double y = i % 2 == 0 ? q : p;
        h.points.push_back(sh::make_pt(x + u(rng), y + u(rng)));
    }
    for (long i = 1; i <= hi; ++i)
        h.paths.push_back(
            sh::path::segment(cs.system->X0, cs.f(h.point_at(i - 1)), h.point_at(i)));
    return h;
}

void BM_lift_path(benchmark::State& state) {
    auto sys = sh::make_circle_system(2);
    auto alpha = sh::path::segment(sys->X0, sh::make_pt(0.3), sh::make_pt(1.3));
    auto base = sh::make_pt(0.15);
    for (auto _ : state) benchmark::DoNotOptimize(sh::lift_path(*sys, alpha, base));
}
BENCHMARK(BM_lift_path)->Unit(benchmark::kMicrosecond);

void BM_shadow_expanding(benchmark::State& state) {
    auto sys = sh::make_circle_system(2);
    auto h = doubling_hpo(*sys, 49);
    for (auto _ : state) benchmark::DoNotOptimize(sh::shadow_expanding(*sys, h, 1e-9));
}
BENCHMARK(BM_shadow_expanding)->Unit(benchmark::kMicrosecond);

void BM_shadow_hyperbolic(benchmark::State& state) {
    auto cs = sh::make_henon_system(
        {.c = {-6.0, 0.0}, .b = {0.1, 0.0}, .Rx = 4.0, .Ry = 4.0, .rx = 0.0});
    auto h = horseshoe_hpo(*cs, 39);
    for (auto _ : state) benchmark::DoNotOptimize(sh::shadow_hyperbolic(*cs, h, 1e-9));
}
BENCHMARK(BM_shadow_hyperbolic)->Unit(benchmark::kMicrosecond);

void BM_henon_margins(benchmark::State& state) {
    sh::henon_params hp{.c = {-6.0, 0.0}, .b = {0.1, 0.0}, .Rx = 4.0, .Ry = 4.0, .rx = 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(sh::henon_margins(hp));
}
BENCHMARK(BM_henon_margins)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
