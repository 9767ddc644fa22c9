#include <benchmark/benchmark.h>

#include "drl/analysis.hpp"
#include "drl/propagator.hpp"

namespace {

drl::Problem gaussian_problem(int n, double sigma) {
    return drl::make_problem(n, sigma, {}, drl::DataCombo{{drl::DataTerm{1.0, drl::Gaussian{0.5}}}});
}

void BM_Kernels(benchmark::State& state) {
    double r = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(drl::kernels(1e4, r, 2.0));
        r += 1e-9;
    }
}
BENCHMARK(BM_Kernels);

void BM_DisplacementDensity(benchmark::State& state) {
    const auto prof = drl::spectral_profiles(gaussian_problem(3, 2.0));
    double r = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(drl::displacement_density(prof, 1e4, r));
        r += 1e-9;
    }
}
BENCHMARK(BM_DisplacementDensity);

// ||u(t)||^2 at t = 10^k; the cost should stay flat in t.
void BM_SolutionNormSq(benchmark::State& state) {
    const auto prof = drl::spectral_profiles(gaussian_problem(static_cast<int>(state.range(0)), 2.0));
    const double t = std::pow(10.0, static_cast<double>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(drl::solution_l2_sq(prof, t));
    }
}
BENCHMARK(BM_SolutionNormSq)->ArgsProduct({{1, 4}, {0, 2, 4, 6, 8}})->Unit(benchmark::kMicrosecond);

void BM_TotalEnergy(benchmark::State& state) {
    const auto p = gaussian_problem(2, 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(drl::total_energy(p, 1e3));
    }
}
BENCHMARK(BM_TotalEnergy)->Unit(benchmark::kMicrosecond);

void BM_TensorOracle(benchmark::State& state) {
    const auto p = gaussian_problem(2, 2.0);
    const double h = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(drl::tensor_oracle(p, 1.0, 8.0, h));
    }
}
BENCHMARK(BM_TensorOracle)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
