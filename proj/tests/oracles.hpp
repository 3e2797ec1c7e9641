#pragma once
// Independent brute-force references used only by the tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using cd = std::complex<double>;

inline i64 divisor_count(i64 n) {
    i64 c = 0;
    for (i64 d = 1; d <= n; ++d) c += (n % d == 0);
    return c;
}

inline int moebius(i64 n) {
    int mu = 1;
    for (i64 p = 2; p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    return mu;
}

inline i64 phi(i64 n) {
    i64 c = 0;
    for (i64 k = 1; k <= n; ++k) c += (std::gcd(k, n) == 1);
    return c;
}

inline i64 inverse(i64 a, i64 m) {
    for (i64 x = 0; x < m; ++x)
        if ((a % m) * x % m == 1 % m) return x;
    return -1;
}

inline cd e(double t, double q) {
    double a = 2 * M_PI * t / q;
    return {std::cos(a), std::sin(a)};
}

inline bool prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// tau(n) for n <= N by direct divisor marking
inline std::vector<int> tau_table(i64 N) {
    std::vector<int> t(N + 1, 0);
    for (i64 d = 1; d <= N; ++d)
        for (i64 m = d; m <= N; m += d) ++t[m];
    return t;
}

// Kloosterman sum with inverse found by search
inline cd kloos(i64 m, i64 n, i64 q) {
    cd s = 0;
    for (i64 h = 0; h < q; ++h) {
        if (std::gcd(h, q) != 1) continue;
        i64 hb = inverse(h, q);
        s += e(double(((m % q + q) % q * h + (n % q + q) % q * hb) % q), double(q));
    }
    return s;
}

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    i64 integer(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
};

}  // namespace oracle
