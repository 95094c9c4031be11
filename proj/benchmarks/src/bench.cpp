#include "chaosync/adaptive_sync.hpp"
#include "chaosync/comm.hpp"
#include "chaosync/lyapunov.hpp"
#include "chaosync/metrics.hpp"
#include "chaosync/rabinovich.hpp"
#include "chaosync/rk4.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace chaosync;

namespace {

rvec6 bench_state() {
    return {1.2, -0.7, 3.4, 0.9, -2.1, 1.8};
}

void BM_rhs_real(benchmark::State& state) {
    rabinovich_params p;
    rvec6 s = bench_state();
    for (auto _ : state) {
        benchmark::DoNotOptimize(rabinovich_rhs_real(s, p));
    }
}
BENCHMARK(BM_rhs_real);

void BM_rhs_complex(benchmark::State& state) {
    rabinovich_params p;
    cvec3 s = complexify(bench_state());
    for (auto _ : state) {
        benchmark::DoNotOptimize(rabinovich_rhs_complex(s, p));
    }
}
BENCHMARK(BM_rhs_complex);

void BM_jacobian(benchmark::State& state) {
    rabinovich_params p;
    rvec6 s = bench_state();
    for (auto _ : state) {
        benchmark::DoNotOptimize(jacobian_real(s, p));
    }
}
BENCHMARK(BM_jacobian);

void BM_rk4_step(benchmark::State& state) {
    rabinovich_params p;
    auto rhs = [&p](double, const rvec6& x, rvec6& dx) { dx = rabinovich_rhs_real(x, p); };
    rvec6 s = bench_state();
    for (auto _ : state) {
        benchmark::DoNotOptimize(rk4_step(rhs, 0.0, s, 1e-3));
    }
}
BENCHMARK(BM_rk4_step);

void BM_coupled_step(benchmark::State& state) {
    rabinovich_params p;
    gain_matrices g;
    sync_state s;
    s.drive = {cplx(1, 1), cplx(1, 1), cplx(1, 1)};
    s.response = {cplx(3, 3), cplx(3, 3), cplx(3, 3)};
    for (auto _ : state) {
        s = sync_rk4_step(s, 1e-4, p, g);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_coupled_step);

void BM_lyapunov_1s(benchmark::State& state) {
    rabinovich_params p;
    rvec6 init = {0.01, 0.01, 0.01, 0.01, 0.01, 0.01};
    for (auto _ : state) {
        benchmark::DoNotOptimize(lyapunov_spectrum(p, init, {1.0, 0.1, 1e-3}));
    }
}
BENCHMARK(BM_lyapunov_1s);

void BM_ssim_256(benchmark::State& state) {
    image_matrix a, b;
    a.rows = a.cols = b.rows = b.cols = 256;
    a.pixels.resize(256 * 256);
    b.pixels.resize(256 * 256);
    std::mt19937_64 eng(1);
    std::uniform_int_distribution<int> px(0, 255);
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        a.pixels[i] = static_cast<std::uint8_t>(px(eng));
        b.pixels[i] = static_cast<std::uint8_t>(px(eng));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssim(a, b));
    }
}
BENCHMARK(BM_ssim_256);

void BM_transmit_2s(benchmark::State& state) {
    rabinovich_params p;
    gain_matrices g{{66, 55, 77}, {0.05, 0.05, 0.05}, {0.05, 0.05, 0.05}};
    comm_schedule sched;
    sched.start_time = 1.0;
    sched.dwell_seconds = 0.25;
    sched.settle_seconds = 0.25;
    sched.split_fraction = 0.5;
    message msg;
    msg.symbols = {1, 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(transmit(msg, p, g, sched, 0.0, 1));
    }
}
BENCHMARK(BM_transmit_2s);

} // namespace

BENCHMARK_MAIN();
