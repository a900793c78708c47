// Serial reference vs OpenMP kernels. Sizes follow the default pipeline:
// a 4 x 96 context mirrored to 768 samples, K = 3; L = 96, H = 24.

#include "vmdlinear/kernels.hpp"
#include "vmdlinear/vmd.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

using namespace vmdl;

namespace {

struct SweepData {
    std::vector<Complex> signal, dual, modes;
    std::vector<double> freqs, omegas;

    SweepData(std::size_t bins, std::size_t K) : signal(bins), dual(bins), modes(bins * K), freqs(bins), omegas(K) {
        std::mt19937_64 rng(1);
        std::normal_distribution<double> g;
        for (std::size_t j = 0; j < bins; ++j) {
            signal[j] = {g(rng), g(rng)};
            freqs[j] = 0.5 * static_cast<double>(j) / static_cast<double>(bins - 1);
        }
        for (std::size_t k = 0; k < K; ++k) omegas[k] = 0.5 * static_cast<double>(k) / static_cast<double>(K);
    }
    kernels::SweepInputs inputs() const { return {signal, dual, freqs, omegas, 2000.0}; }
};

template <auto Sweep>
void BM_ModeSweep(benchmark::State& state) {
    SweepData d(static_cast<std::size_t>(state.range(0)), 3);
    const auto in = d.inputs();
    for (auto _ : state) {
        Sweep(in, d.modes);
        benchmark::DoNotOptimize(d.modes.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Matrix m(r, c);
    for (auto& v : m.flat()) v = g(rng);
    return m;
}

template <auto Forward>
void BM_DenseForward(benchmark::State& state) {
    const auto rows = static_cast<std::size_t>(state.range(0));
    const auto x = random_matrix(rows, 96, 2);
    const auto w = random_matrix(24, 96, 3);
    const std::vector<double> bias(24, 0.1);
    Matrix out(rows, 24);
    for (auto _ : state) {
        Forward(x, w, bias, out);
        benchmark::DoNotOptimize(out.flat().data());
    }
}

template <auto Gradient>
void BM_DenseGradient(benchmark::State& state) {
    const auto rows = static_cast<std::size_t>(state.range(0));
    const auto g = random_matrix(rows, 24, 4);
    const auto x = random_matrix(rows, 96, 5);
    Matrix dw(24, 96);
    std::vector<double> db(24);
    for (auto _ : state) {
        Gradient(g, x, dw, db);
        benchmark::DoNotOptimize(dw.flat().data());
    }
}

void BM_Decompose(benchmark::State& state) {
    kernels::set_threads(static_cast<int>(state.range(1)));
    std::vector<double> x(static_cast<std::size_t>(state.range(0)));
    for (std::size_t t = 0; t < x.size(); ++t) {
        const double tt = static_cast<double>(t);
        x[t] = std::sin(0.3 * tt) + 0.5 * std::sin(1.7 * tt);
    }
    VmdConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(decompose(x, cfg));
    state.counters["threads"] = static_cast<double>(state.range(1));
}

}  // namespace

BENCHMARK(BM_ModeSweep<kernels::mode_sweep_serial>)->Name("mode_sweep/serial")->Arg(385)->Arg(4097)->Arg(32769);
BENCHMARK(BM_ModeSweep<kernels::mode_sweep_parallel>)->Name("mode_sweep/parallel")->Arg(385)->Arg(4097)->Arg(32769);
BENCHMARK(BM_DenseForward<kernels::dense_forward_serial>)->Name("dense_forward/serial")->Arg(64)->Arg(4096);
BENCHMARK(BM_DenseForward<kernels::dense_forward_parallel>)->Name("dense_forward/parallel")->Arg(64)->Arg(4096);
BENCHMARK(BM_DenseGradient<kernels::dense_gradient_serial>)->Name("dense_gradient/serial")->Arg(64)->Arg(4096);
BENCHMARK(BM_DenseGradient<kernels::dense_gradient_parallel>)->Name("dense_gradient/parallel")->Arg(64)->Arg(4096);
BENCHMARK(BM_Decompose)->Args({384, 1})->Args({384, 4})->Args({4096, 1})->Args({4096, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
