#pragma once

#include <cstdint>
#include <vector>

#include "tau2/arith.hpp"

namespace ntw {

// Linear sieve over [0, n]. Index 0 is unused.
struct LinearSieve {
    explicit LinearSieve(i64 n);

    i64 limit;
    std::vector<std::int32_t> tau;
    std::vector<std::int8_t> mu;
    std::vector<std::int32_t> primes;
};

// Rigorous upper bound for sum_{k > N} tau(k) k^{-alpha}, alpha > 1, from
// sum_{k <= x} tau(k) <= x (log x + 1).
double divisor_tail_bound(double alpha, double N);

}  // namespace ntw
