#include "tau2/exp_sums.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ntw {

Complex unit_root(i64 t, i64 q) {
    if (q <= 0) throw std::invalid_argument("e_q needs q >= 1");
    i64 r = mod(t, q);
    if (r == 0) return {1.0, 0.0};
    if (4 * r == q) return {0.0, 1.0};
    if (2 * r == q) return {-1.0, 0.0};
    if (4 * r == 3 * q) return {0.0, -1.0};
    // fold into (-1/2, 1/2] turns so the argument of sin/cos stays small
    long double frac = static_cast<long double>(r) / static_cast<long double>(q);
    if (frac > 0.5L) frac -= 1.0L;
    long double ang = 2.0L * std::numbers::pi_v<long double> * frac;
    return {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
}

RootsOfUnityTable::RootsOfUnityTable(i64 q) : q_(q) {
    if (q <= 0) throw std::invalid_argument("roots table needs q >= 1");
    v_.resize(static_cast<std::size_t>(q));
    for (i64 t = 0; t < q; ++t) v_[static_cast<std::size_t>(t)] = unit_root(t, q);
}

Complex e_q(i64 t, i64 q) { return unit_root(t, q); }

Complex kloosterman(i64 m, i64 n, i64 q, const RootsOfUnityTable& roots) {
    if (roots.modulus() != q) throw std::invalid_argument("roots table modulus mismatch");
    KahanSum<Complex> s;
    i64 mm = mod(m, q), nn = mod(n, q);
    for (i64 h : units(q)) {
        i64 hb = inverse_mod(h, q);
        s += roots.at_reduced((mm * h + nn * hb) % q);
    }
    return s.value();
}

Complex kloosterman(i64 m, i64 n, i64 q) {
    if (q <= 0) throw std::invalid_argument("kloosterman needs q >= 1");
    return kloosterman(m, n, q, RootsOfUnityTable(q));
}

Complex hyper_kloosterman(int k, const ResidueClass& A, const PrimeModulus& pm) {
    i64 p = pm.value();
    if (A.modulus() != p) throw std::invalid_argument("residue modulus differs from p");
    if (A.value() == 0) throw NotInvertible(0, p, p);
    if (k < 1 || k > 4) throw std::invalid_argument("hyper_kloosterman supports 1 <= k <= 4");
    if (k >= 3 && p > 3000) throw std::invalid_argument("hyper_kloosterman with k >= 3 is capped at p <= 3000");
    RootsOfUnityTable roots(p);
    if (k == 1) return roots[A.value()];

    std::vector<i64> inv(static_cast<std::size_t>(p), 0);
    for (i64 x = 1; x < p; ++x) inv[x] = inverse_mod(x, p);

    KahanSum<Complex> s;
    // enumerate x_1..x_{k-1} in lexicographic order; x_k is forced
    std::vector<i64> x(static_cast<std::size_t>(k - 1), 1);
    for (;;) {
        i64 prod = 1, sum = 0;
        for (i64 xi : x) {
            prod = prod * xi % p;
            sum += xi;
        }
        i64 xk = A.value() * inv[prod] % p;
        s += roots[(sum + xk) % p];
        int i = k - 2;
        while (i >= 0 && x[i] == p - 1) x[i--] = 1;
        if (i < 0) break;
        ++x[i];
    }
    return s.value();
}

Complex ramanujan_sum(i64 q, i64 a) {
    if (q <= 0) throw std::invalid_argument("ramanujan_sum needs q >= 1");
    KahanSum<Complex> s;
    i64 aa = mod(a, q);
    for (i64 h : units(q)) s += unit_root(mulmod(h, aa, q), q);
    return s.value();
}

i64 ramanujan_sum_divisor(i64 q, i64 a) {
    if (q <= 0) throw std::invalid_argument("ramanujan_sum needs q >= 1");
    i64 g = gcd(q, a);
    i64 s = 0;
    for (i64 d : factorize(g).divisors()) s += d * mobius(q / d);
    return s;
}

WeilCheck weil_bound_check(i64 m, i64 n, i64 q) {
    double bound = std::sqrt(static_cast<double>(gcd3(m, n, q))) * std::sqrt(static_cast<double>(q)) * tau2(q);
    double a = std::abs(kloosterman(m, n, q));
    return {bound, a <= bound + 1e-6, a};
}

}  // namespace ntw
