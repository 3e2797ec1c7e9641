#include "tau2/sieve.hpp"

#include <cmath>
#include <stdexcept>

namespace ntw {

LinearSieve::LinearSieve(i64 n) : limit(n) {
    if (n < 1) throw std::invalid_argument("sieve limit must be >= 1");
    std::size_t sz = static_cast<std::size_t>(n) + 1;
    tau.assign(sz, 0);
    mu.assign(sz, 0);
    // exponent of the smallest prime factor, needed to update tau multiplicatively
    std::vector<std::int32_t> e(sz, 0);
    tau[1] = 1;
    mu[1] = 1;
    for (i64 i = 2; i <= n; ++i) {
        if (tau[i] == 0) {
            primes.push_back(static_cast<std::int32_t>(i));
            tau[i] = 2;
            mu[i] = -1;
            e[i] = 1;
        }
        for (std::int32_t p : primes) {
            i64 m = i * p;
            if (m > n) break;
            if (i % p == 0) {
                e[m] = e[i] + 1;
                tau[m] = tau[i] / (e[i] + 1) * (e[i] + 2);
                mu[m] = 0;
                break;
            }
            e[m] = 1;
            tau[m] = tau[i] * 2;
            mu[m] = static_cast<std::int8_t>(-mu[i]);
        }
    }
}

double divisor_tail_bound(double alpha, double N) {
    if (!(alpha > 1.0)) throw std::invalid_argument("divisor_tail_bound needs alpha > 1");
    if (N < 1.0) N = 1.0;
    double a1 = alpha - 1.0;
    return alpha * std::pow(N, -a1) * ((std::log(N) + 1.0) / a1 + 1.0 / (a1 * a1));
}

}  // namespace ntw
