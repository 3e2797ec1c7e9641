#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ntw {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 finaliser
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// First k entries of a seeded Fisher-Yates shuffle. std::shuffle and the standard
// distributions are implementation-defined, so both are done by hand here.
template <class T>
std::vector<T> seeded_sample(std::vector<T> pool, std::size_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::size_t n = pool.size();
    if (k > n) k = n;
    for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t span = n - i;
        // rejection keeps the draw unbiased
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t r;
        do r = rng();
        while (r >= limit);
        std::swap(pool[i], pool[i + r % span]);
    }
    pool.resize(k);
    return pool;
}

}  // namespace ntw
