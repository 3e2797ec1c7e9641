#pragma once
// Parallel kernels and their serial references. Each pair produces bit-identical
// output: parallelism is only across independent sums, never inside one.

#include <omp.h>

#include <cstdint>
#include <vector>

#include "tau2/arith.hpp"
#include "tau2/summation.hpp"

namespace ntw {

class VWeight;

namespace kernels {

std::vector<std::int32_t> tau_segment_serial(i64 lo, i64 hi);
std::vector<std::int32_t> tau_segment_omp(i64 lo, i64 hi, i64 block = 1 << 15);

// out[r] = sum of w[i] over i with (first + i) = r (mod q), ascending i
template <class T>
std::vector<T> residue_sums_serial(const std::vector<T>& w, i64 first, i64 q) {
    std::vector<KahanSum<T>> acc(static_cast<std::size_t>(q));
    i64 r = mod(first, q);
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc[static_cast<std::size_t>(r)] += w[i];
        if (++r == q) r = 0;
    }
    std::vector<T> out(static_cast<std::size_t>(q));
    for (i64 k = 0; k < q; ++k) out[static_cast<std::size_t>(k)] = acc[static_cast<std::size_t>(k)].value();
    return out;
}

template <class T>
std::vector<T> residue_sums_omp(const std::vector<T>& w, i64 first, i64 q) {
    std::vector<T> out(static_cast<std::size_t>(q));
    const i64 n = static_cast<i64>(w.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (i64 r = 0; r < q; ++r) {
        KahanSum<T> acc;
        for (i64 i = mod(r - first, q); i < n; i += q) acc += w[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(r)] = acc.value();
    }
    return out;
}

struct WeilScan {
    i64 p = 0;
    i64 pairs = 0;
    i64 violations = 0;
    double max_ratio = 0.0;    // max |S(m,n;p)| / bound
    double max_imag = 0.0;
};

WeilScan weil_scan_serial(i64 p);
WeilScan weil_scan_omp(i64 p);

std::vector<Complex> kloosterman_table_serial(i64 q);
std::vector<Complex> kloosterman_table_omp(i64 q);

std::vector<double> v_table_serial(const VWeight& V, const std::vector<double>& ys);
std::vector<double> v_table_omp(const VWeight& V, const std::vector<double>& ys);

}  // namespace kernels
}  // namespace ntw
