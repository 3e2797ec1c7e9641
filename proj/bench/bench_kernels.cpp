#include <benchmark/benchmark.h>

#include <cmath>

#include "tau2/afe.hpp"
#include "tau2/kernels.hpp"

using namespace ntw;

namespace {

void BM_tau_segment_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::tau_segment_serial(1000000, 1000000 + st.range(0)));
}
void BM_tau_segment_omp(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::tau_segment_omp(1000000, 1000000 + st.range(0)));
}

std::vector<double> weights(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::sin(0.001 * double(i)) + 1.5;
    return w;
}

void BM_residue_sums_serial(benchmark::State& st) {
    auto w = weights(1 << 20);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::residue_sums_serial(w, 1000001, st.range(0)));
}
void BM_residue_sums_omp(benchmark::State& st) {
    auto w = weights(1 << 20);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::residue_sums_omp(w, 1000001, st.range(0)));
}

void BM_weil_scan_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::weil_scan_serial(st.range(0)));
}
void BM_weil_scan_omp(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::weil_scan_omp(st.range(0)));
}

void BM_kloosterman_table_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::kloosterman_table_serial(st.range(0)));
}
void BM_kloosterman_table_omp(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::kloosterman_table_omp(st.range(0)));
}

std::vector<double> grid(std::size_t n) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = std::exp(-5.0 + 15.0 * double(i) / double(n));
    return y;
}

void BM_v_table_serial(benchmark::State& st) {
    VWeight V(0);
    auto ys = grid(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::v_table_serial(V, ys));
}
void BM_v_table_omp(benchmark::State& st) {
    VWeight V(0);
    auto ys = grid(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::v_table_omp(V, ys));
}

}  // namespace

BENCHMARK(BM_tau_segment_serial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tau_segment_omp)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_residue_sums_serial)->Arg(101)->Arg(1009)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_residue_sums_omp)->Arg(101)->Arg(1009)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_weil_scan_serial)->Arg(199)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_weil_scan_omp)->Arg(199)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kloosterman_table_serial)->Arg(499)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kloosterman_table_omp)->Arg(499)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_v_table_serial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_v_table_omp)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
