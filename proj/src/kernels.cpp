#include "tau2/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "tau2/afe.hpp"
#include "tau2/exp_sums.hpp"

namespace ntw::kernels {

std::vector<std::int32_t> tau_segment_serial(i64 lo, i64 hi) {
    if (lo < 1) throw std::invalid_argument("tau segment needs lo >= 1");
    if (hi < lo) return {};
    std::vector<std::int32_t> t(static_cast<std::size_t>(hi - lo + 1), 0);
    // count pairs d <= k with d k in [lo, hi]
    for (i64 d = 1; d * d <= hi; ++d) {
        i64 k = std::max(d, (lo + d - 1) / d);
        for (i64 n = k * d; n <= hi; n += d, ++k) t[static_cast<std::size_t>(n - lo)] += (k == d) ? 1 : 2;
    }
    return t;
}

std::vector<std::int32_t> tau_segment_omp(i64 lo, i64 hi, i64 block) {
    if (lo < 1) throw std::invalid_argument("tau segment needs lo >= 1");
    if (hi < lo) return {};
    if (block < 1) throw std::invalid_argument("block must be positive");
    std::vector<std::int32_t> t(static_cast<std::size_t>(hi - lo + 1), 0);
    const i64 nblocks = (hi - lo) / block + 1;
#pragma omp parallel for schedule(dynamic, 1)
    for (i64 b = 0; b < nblocks; ++b) {
        i64 a = lo + b * block, e = std::min(hi, a + block - 1);
        auto part = tau_segment_serial(a, e);
        std::copy(part.begin(), part.end(), t.begin() + (a - lo));
    }
    return t;
}

namespace {

struct WeilRow {
    i64 violations = 0;
    double max_ratio = 0.0, max_imag = 0.0;
};

WeilRow weil_row(i64 m, i64 p, const RootsOfUnityTable& roots, const std::vector<i64>& inv) {
    WeilRow r;
    const double sp = std::sqrt(double(p));
    for (i64 n = 0; n < p; ++n) {
        KahanSum<Complex> s;
        for (i64 h = 1; h < p; ++h) s += roots.at_reduced((m * h + n * inv[h]) % p);
        Complex v = s.value();
        double bound = 2.0 * sp * std::sqrt(double(gcd3(m, n, p)));
        double a = std::abs(v);
        if (a > bound + 1e-6) ++r.violations;
        r.max_ratio = std::max(r.max_ratio, a / bound);
        r.max_imag = std::max(r.max_imag, std::abs(v.imag()));
    }
    return r;
}

std::vector<i64> inverse_table(i64 p) {
    std::vector<i64> inv(static_cast<std::size_t>(p), 0);
    for (i64 h = 1; h < p; ++h) inv[h] = inverse_mod(h, p);
    return inv;
}

WeilScan combine(i64 p, const std::vector<WeilRow>& rows) {
    WeilScan w;
    w.p = p;
    w.pairs = p * p;
    for (auto& r : rows) {
        w.violations += r.violations;
        w.max_ratio = std::max(w.max_ratio, r.max_ratio);
        w.max_imag = std::max(w.max_imag, r.max_imag);
    }
    return w;
}

}  // namespace

WeilScan weil_scan_serial(i64 p) {
    PrimeModulus pm(p);
    RootsOfUnityTable roots(p);
    auto inv = inverse_table(p);
    std::vector<WeilRow> rows(static_cast<std::size_t>(p));
    for (i64 m = 0; m < p; ++m) rows[m] = weil_row(m, p, roots, inv);
    return combine(p, rows);
}

WeilScan weil_scan_omp(i64 p) {
    PrimeModulus pm(p);
    RootsOfUnityTable roots(p);
    auto inv = inverse_table(p);
    std::vector<WeilRow> rows(static_cast<std::size_t>(p));
#pragma omp parallel for schedule(dynamic, 1)
    for (i64 m = 0; m < p; ++m) rows[m] = weil_row(m, p, roots, inv);
    return combine(p, rows);
}

namespace {

// same ascending-h Kahan order as kloosterman(), with the inverses precomputed
Complex kloosterman_one(i64 r, i64 q, const RootsOfUnityTable& roots, const std::vector<std::pair<i64, i64>>& uinv) {
    KahanSum<Complex> s;
    for (auto [h, hb] : uinv) s += roots.at_reduced((h + r * hb) % q);
    return s.value();
}

std::vector<std::pair<i64, i64>> unit_inverses(i64 q) {
    std::vector<std::pair<i64, i64>> out;
    for (i64 h : units(q)) out.emplace_back(h % q, inverse_mod(h, q));
    return out;
}

}  // namespace

std::vector<Complex> kloosterman_table_serial(i64 q) {
    if (q < 1) throw std::invalid_argument("modulus must be >= 1");
    RootsOfUnityTable roots(q);
    auto uinv = unit_inverses(q);
    std::vector<Complex> out(static_cast<std::size_t>(q));
    for (i64 r = 0; r < q; ++r) out[r] = kloosterman_one(r, q, roots, uinv);
    return out;
}

std::vector<Complex> kloosterman_table_omp(i64 q) {
    if (q < 1) throw std::invalid_argument("modulus must be >= 1");
    RootsOfUnityTable roots(q);
    auto uinv = unit_inverses(q);
    std::vector<Complex> out(static_cast<std::size_t>(q));
#pragma omp parallel for schedule(dynamic, 16)
    for (i64 r = 0; r < q; ++r) out[r] = kloosterman_one(r, q, roots, uinv);
    return out;
}

std::vector<double> v_table_serial(const VWeight& V, const std::vector<double>& ys) {
    std::vector<double> out(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) out[i] = V(ys[i]);
    return out;
}

std::vector<double> v_table_omp(const VWeight& V, const std::vector<double>& ys) {
    std::vector<double> out(ys.size());
    const i64 n = static_cast<i64>(ys.size());
#pragma omp parallel for schedule(static)
    for (i64 i = 0; i < n; ++i) out[i] = V(ys[i]);
    return out;
}

}  // namespace ntw::kernels
