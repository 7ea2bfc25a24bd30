#include <benchmark/benchmark.h>

#include <random>

#include "chns/adjoint.hpp"
#include "chns/operators.hpp"
#include "chns/spectral.hpp"

using namespace chns;

namespace {

ScalarField random_field(const GridPtr& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ScalarField f(grid);
    for (std::size_t n = 0; n < f.size(); ++n) f[n] = u(rng);
    return f;
}

State smooth_state(const GridPtr& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ScalarField phi = dealias(random_smooth_scalar(grid, rng, 3.0));
    phi *= 0.3;
    VectorField u = random_solenoidal(grid, rng, 3.0);
    u *= 0.4;
    return State{leray_project(dealias(u)), phi, 0.0};
}

void bm_fft_roundtrip(benchmark::State& state) {
    auto grid = make_grid(state.range(0), state.range(0));
    const ScalarField f = random_field(grid, 1);
    for (auto _ : state) {
        Spectrum s = to_spectrum(f);
        benchmark::DoNotOptimize(to_field(std::move(s), grid));
    }
}

void bm_grad(benchmark::State& state) {
    auto grid = make_grid(state.range(0), state.range(0));
    const ScalarField f = random_field(grid, 2);
    for (auto _ : state) benchmark::DoNotOptimize(grad(f));
}

void bm_leray(benchmark::State& state) {
    auto grid = make_grid(state.range(0), state.range(0));
    const VectorField v(random_field(grid, 3), random_field(grid, 4));
    for (auto _ : state) benchmark::DoNotOptimize(leray_project(v));
}

void bm_convolve(benchmark::State& state) {
    auto grid = make_grid(state.range(0), state.range(0));
    const Kernel kernel = build_kernel(GaussianKernelSpec{0.5, 5.0}, grid);
    const ScalarField f = random_field(grid, 5);
    for (auto _ : state) benchmark::DoNotOptimize(convolve(kernel, f));
}

void bm_forward_step(benchmark::State& state) {
    auto grid = make_grid(state.range(0), state.range(0));
    const Kernel kernel = build_kernel(GaussianKernelSpec{0.5, 5.0}, grid);
    const Potential pot = Potential::double_well();
    SolverConfig cfg;
    cfg.nu = 0.05;
    cfg.dt = 1e-3;
    cfg.t_final = 1e-3;
    const State init = smooth_state(grid, 6);
    const VectorField slice(grid);
    for (auto _ : state) benchmark::DoNotOptimize(step(init, slice, cfg, kernel, pot));
}

void bm_adjoint_sweep(benchmark::State& state) {
    auto grid = make_grid(state.range(0), state.range(0));
    const Kernel kernel = build_kernel(GaussianKernelSpec{0.5, 5.0}, grid);
    const Potential pot = Potential::double_well();
    SolverConfig cfg;
    cfg.nu = 0.05;
    cfg.dt = 1e-3;
    cfg.t_final = 0.02;
    const State init = smooth_state(grid, 7);
    const Control zero(grid, cfg.n_steps(), cfg.dt);
    const Trajectory base = solve_forward(init, zero, cfg, kernel, pot);
    TargetSpec targets = targets_from_trajectory(base);
    for (auto& slice : targets.u_d) slice *= 0.9;  // nonzero sources
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_adjoint(base, targets, kernel, pot, cfg));
}

}  // namespace

BENCHMARK(bm_fft_roundtrip)->Arg(64)->Arg(128);
BENCHMARK(bm_grad)->Arg(64)->Arg(128);
BENCHMARK(bm_leray)->Arg(64)->Arg(128);
BENCHMARK(bm_convolve)->Arg(64)->Arg(128);
BENCHMARK(bm_forward_step)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_adjoint_sweep)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
