#include <benchmark/benchmark.h>

#include "xisys/canonical.hpp"
#include "xisys/kernel.hpp"
#include "xisys/operator.hpp"
#include "xisys/specfun.hpp"

using namespace xisys;

static void BM_Xi(benchmark::State& state) {
    const Complex s(0.5 + 1.5, 12.0);
    for (auto _ : state) benchmark::DoNotOptimize(specfun::xi(s));
}
BENCHMARK(BM_Xi);

static void BM_XiThetaSeries(benchmark::State& state) {
    const Complex s(0.7, 12.0);
    for (auto _ : state) benchmark::DoNotOptimize(specfun::xi_theta_series(s));
}
BENCHMARK(BM_XiThetaSeries);

static void BM_KernelH(benchmark::State& state) {
    const kernel::KernelContext ctx(1.5);
    const double x = double(state.range(0)) + 0.37;
    for (auto _ : state) benchmark::DoNotOptimize(ctx.h(x));
}
BENCHMARK(BM_KernelH)->Arg(2)->Arg(20)->Arg(200);

static void BM_KernelContext(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(kernel::KernelContext(1.5).c_table().size());
}
BENCHMARK(BM_KernelContext)->Unit(benchmark::kMillisecond);

static void BM_Nystrom(benchmark::State& state) {
    const kernel::KernelContext ctx(1.5);
    const auto grid = op::build_grid(state.range(0) / 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(op::discretize(ctx, grid).spectral_radius());
}
BENCHMARK(BM_Nystrom)->Arg(15)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Galerkin(benchmark::State& state) {
    const kernel::KernelContext ctx(1.5);
    const double a = state.range(0) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(op::discretize_galerkin(ctx, a).size());
}
BENCHMARK(BM_Galerkin)->Arg(13)->Arg(15)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_SolvePhi(benchmark::State& state) {
    const kernel::KernelContext ctx(1.5);
    const auto D = op::discretize_galerkin(ctx, 1.5);
    for (auto _ : state) benchmark::DoNotOptimize(op::solve_phi(ctx, D, 1).at_a());
}
BENCHMARK(BM_SolvePhi)->Unit(benchmark::kMillisecond);

static void BM_Evolve(benchmark::State& state) {
    const kernel::KernelContext ctx(1.5);
    const auto curve = canon::m_curve(ctx, {1.1, 1.2, 1.3});
    const auto s0 = canon::ab_initial(Complex(2.0, 1.0), 1.5);
    for (auto _ : state) benchmark::DoNotOptimize(canon::evolve(s0, 1.3, curve).A);
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMillisecond);

static void BM_Zeros(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(canon::zeros_of_a(1.5, 30.0).contour_count);
}
BENCHMARK(BM_Zeros)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
