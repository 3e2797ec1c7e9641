#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ntw {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// moduli above this are rejected so residue products fit in 63 bits
inline constexpr i64 kMaxModulus = i64{1} << 31;

class NotInvertible : public std::domain_error {
public:
    NotInvertible(i64 value, i64 modulus, i64 g);
    i64 value, modulus, gcd;
};

i64 checked_mul(i64 a, i64 b);
i64 checked_add(i64 a, i64 b);

inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 base, u64 exp, i64 m);
i64 gcd(i64 a, i64 b);
i64 gcd3(i64 m, i64 n, i64 q);

bool is_prime(u64 n);
i64 next_prime(i64 n);       // smallest prime >= n
i64 prev_prime(i64 n);       // largest prime <= n, 0 if none
std::vector<i64> primes_in(i64 lo, i64 hi);

class PrimeModulus {
public:
    explicit PrimeModulus(i64 p);
    i64 value() const { return p_; }
    operator i64() const { return p_; }

private:
    i64 p_;
};

class ResidueClass {
public:
    ResidueClass(i64 value, i64 modulus);
    i64 value() const { return v_; }
    i64 modulus() const { return m_; }
    bool operator==(const ResidueClass&) const = default;

private:
    i64 v_, m_;
};

struct FactoredInteger {
    i64 n = 1;
    std::vector<std::pair<i64, int>> factors;

    std::vector<i64> divisors() const;    // ascending
    std::vector<i64> prime_factors() const;
};

FactoredInteger factorize(i64 n);

ResidueClass mod_inverse(const ResidueClass& a);
i64 inverse_mod(i64 a, i64 m);

int tau2(i64 n);
int mobius(i64 n);
i64 euler_phi(i64 n);
bool is_squarefree(i64 n);

ResidueClass primitive_root(const PrimeModulus& p);
i64 multiplicative_order(i64 a, i64 m);

// units mod q in ascending order
std::vector<i64> units(i64 q);

}  // namespace ntw
