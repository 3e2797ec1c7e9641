#include "doctest.h"
#include "oracles.hpp"
#include "tau2/afe.hpp"
#include "tau2/exp_sums.hpp"
#include "tau2/kernels.hpp"

using namespace ntw;

namespace {

template <class F>
auto with_threads(int n, F&& f) {
    int before = omp_get_max_threads();
    omp_set_num_threads(n);
    auto r = f();
    omp_set_num_threads(before);
    return r;
}

bool same_bits(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].real() != b[i].real() || a[i].imag() != b[i].imag()) return false;
    return true;
}

}  // namespace

TEST_CASE("tau segment against the divisor-marking oracle") {
    auto ref = oracle::tau_table(5000);
    oracle::Gen g(11);
    for (int it = 0; it < 40; ++it) {
        i64 lo = g.integer(1, 4000), hi = g.integer(lo, 5000);
        auto s = kernels::tau_segment_serial(lo, hi);
        REQUIRE(s.size() == std::size_t(hi - lo + 1));
        for (i64 n = lo; n <= hi; ++n) CHECK(s[std::size_t(n - lo)] == ref[std::size_t(n)]);
    }
    for (int threads : {1, 2, 3, 7})
        CHECK(with_threads(threads, [] { return kernels::tau_segment_omp(999000, 1003000, 517); }) ==
              kernels::tau_segment_serial(999000, 1003000));
}

TEST_CASE("residue sums are bit-identical across thread counts") {
    oracle::Gen g(12);
    std::vector<double> w(20000);
    for (auto& x : w) x = g.real(-1, 1) * std::pow(10.0, g.real(-8, 8));
    for (i64 q : {1, 2, 7, 97, 1009}) {
        auto ref = kernels::residue_sums_serial(w, 12345, q);
        for (int threads : {1, 2, 5})
            CHECK(with_threads(threads, [&] { return kernels::residue_sums_omp(w, 12345, q); }) == ref);
    }
    std::vector<Complex> wc(3000);
    for (auto& x : wc) x = Complex(g.real(-1, 1), g.real(-1, 1));
    CHECK(same_bits(kernels::residue_sums_serial(wc, -4, 13),
                    with_threads(3, [&] { return kernels::residue_sums_omp(wc, -4, 13); })));
}

TEST_CASE("weil scan serial and parallel agree") {
    for (i64 p : {2, 3, 31, 101}) {
        auto a = kernels::weil_scan_serial(p);
        auto b = with_threads(4, [&] { return kernels::weil_scan_omp(p); });
        CHECK(a.pairs == b.pairs);
        CHECK(a.violations == 0);
        CHECK(b.violations == 0);
        CHECK(a.max_ratio == b.max_ratio);
        CHECK(a.max_ratio <= 1.0);
        CHECK(a.max_imag < 1e-9);
    }
}

TEST_CASE("kloosterman tables match the scalar routine and each other") {
    for (i64 q : {1, 2, 9, 30, 101}) {
        auto s = kernels::kloosterman_table_serial(q);
        CHECK(same_bits(s, with_threads(3, [&] { return kernels::kloosterman_table_omp(q); })));
        for (i64 r = 0; r < q; ++r) {
            CHECK(s[std::size_t(r)] == kloosterman(1, r, q));
            CHECK(std::abs(s[std::size_t(r)] - oracle::kloos(1, r, q)) < 1e-9);
        }
    }
}

TEST_CASE("v table serial and parallel agree") {
    VWeight V(1, 0.5);
    std::vector<double> ys;
    for (double u = -8; u < 8; u += 0.7) ys.push_back(std::exp(u));
    auto a = kernels::v_table_serial(V, ys);
    CHECK(a == with_threads(4, [&] { return kernels::v_table_omp(V, ys); }));
    for (std::size_t i = 0; i < ys.size(); ++i) CHECK(a[i] == V(ys[i]));
}
