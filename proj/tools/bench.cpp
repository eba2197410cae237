#include "smectic/fft.hpp"
#include "smectic/kernels.hpp"
#include "smectic/operators.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

std::vector<double> random_array(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> out(n);
    for (double& x : out) x = u(rng);
    return out;
}

void bm_reduce_omp(benchmark::State& state) {
    auto a = random_array(std::size_t(state.range(0)), 1);
    for (auto _ : state) {
        double s = smectic::kernels::reduce_sum(
            a.size(), [&](std::size_t i) { return a[i] * a[i]; });
        benchmark::DoNotOptimize(s);
    }
}

void bm_reduce_ref(benchmark::State& state) {
    auto a = random_array(std::size_t(state.range(0)), 1);
    for (auto _ : state) {
        double s = smectic::kernels::ref::reduce_sum(
            a.size(), [&](std::size_t i) { return a[i] * a[i]; });
        benchmark::DoNotOptimize(s);
    }
}

void bm_multiply_omp(benchmark::State& state) {
    auto a = random_array(std::size_t(state.range(0)), 1);
    auto b = random_array(std::size_t(state.range(0)), 2);
    std::vector<double> out(a.size());
    for (auto _ : state) {
        smectic::kernels::multiply(a, b, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void bm_multiply_ref(benchmark::State& state) {
    auto a = random_array(std::size_t(state.range(0)), 1);
    auto b = random_array(std::size_t(state.range(0)), 2);
    std::vector<double> out(a.size());
    for (auto _ : state) {
        smectic::kernels::ref::multiply(a, b, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void bm_axpy_omp(benchmark::State& state) {
    auto a = random_array(std::size_t(state.range(0)), 1);
    auto out = random_array(std::size_t(state.range(0)), 2);
    for (auto _ : state) {
        smectic::kernels::axpy(0.5, a, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void bm_axpy_ref(benchmark::State& state) {
    auto a = random_array(std::size_t(state.range(0)), 1);
    auto out = random_array(std::size_t(state.range(0)), 2);
    for (auto _ : state) {
        smectic::kernels::ref::axpy(0.5, a, out);
        benchmark::DoNotOptimize(out.data());
    }
}

} // namespace

BENCHMARK(bm_reduce_omp)->Arg(1 << 15)->Arg(1 << 21);
BENCHMARK(bm_reduce_ref)->Arg(1 << 15)->Arg(1 << 21);
BENCHMARK(bm_multiply_omp)->Arg(1 << 15)->Arg(1 << 21);
BENCHMARK(bm_multiply_ref)->Arg(1 << 15)->Arg(1 << 21);
BENCHMARK(bm_axpy_omp)->Arg(1 << 15)->Arg(1 << 21);
BENCHMARK(bm_axpy_ref)->Arg(1 << 15)->Arg(1 << 21);

BENCHMARK_MAIN();
