#include "tau2/arith.hpp"

#include <algorithm>
#include <string>

namespace ntw {

NotInvertible::NotInvertible(i64 v, i64 m, i64 g)
    : std::domain_error("residue " + std::to_string(v) + " mod " + std::to_string(m) +
                        " is not invertible (gcd " + std::to_string(g) + ")"),
      value(v), modulus(m), gcd(g) {}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer multiplication overflow");
    return r;
}

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer addition overflow");
    return r;
}

i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

i64 powmod(i64 base, u64 e, i64 m) {
    if (m == 1) return 0;
    i64 r = 1, b = mod(base, m);
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

i64 gcd(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 gcd3(i64 m, i64 n, i64 q) { return gcd(gcd(m, n), q); }

namespace {

u64 mulmod_u(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m); }

u64 powmod_u(u64 b, u64 e, u64 m) {
    u64 r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u(r, b, m);
        b = mulmod_u(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // this witness set is deterministic for all n < 2^64
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod_u(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

i64 next_prime(i64 n) {
    if (n <= 2) return 2;
    while (!is_prime(static_cast<u64>(n))) ++n;
    return n;
}

i64 prev_prime(i64 n) {
    while (n >= 2 && !is_prime(static_cast<u64>(n))) --n;
    return n >= 2 ? n : 0;
}

std::vector<i64> primes_in(i64 lo, i64 hi) {
    std::vector<i64> out;
    for (i64 n = std::max<i64>(lo, 2); n <= hi; ++n)
        if (is_prime(static_cast<u64>(n))) out.push_back(n);
    return out;
}

PrimeModulus::PrimeModulus(i64 p) : p_(p) {
    if (p < 2 || p >= kMaxModulus || !is_prime(static_cast<u64>(p)))
        throw std::invalid_argument("not a prime modulus: " + std::to_string(p));
}

ResidueClass::ResidueClass(i64 value, i64 modulus) : m_(modulus) {
    if (modulus < 1 || modulus >= kMaxModulus) throw std::invalid_argument("modulus out of range");
    v_ = mod(value, modulus);
}

std::vector<i64> FactoredInteger::divisors() const {
    std::vector<i64> d{1};
    for (auto [p, e] : factors) {
        std::size_t k = d.size();
        i64 pk = 1;
        for (int i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < k; ++j) d.push_back(d[j] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<i64> FactoredInteger::prime_factors() const {
    std::vector<i64> out;
    for (auto& f : factors) out.push_back(f.first);
    return out;
}

FactoredInteger factorize(i64 n) {
    if (n < 1) throw std::invalid_argument("factorize expects n >= 1");
    FactoredInteger f;
    f.n = n;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    if (n > 1) f.factors.emplace_back(n, 1);
    return f;
}

i64 inverse_mod(i64 a, i64 m) {
    if (m == 1) return 0;
    i64 r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
    while (r1) {
        i64 q = r0 / r1;
        i64 t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw NotInvertible(mod(a, m), m, r0);
    return mod(s0, m);
}

ResidueClass mod_inverse(const ResidueClass& a) {
    return ResidueClass(inverse_mod(a.value(), a.modulus()), a.modulus());
}

int tau2(i64 n) {
    if (n < 1) throw std::invalid_argument("tau2 expects n >= 1");
    int t = 1;
    for (auto [p, e] : factorize(n).factors) t *= e + 1;
    return t;
}

int mobius(i64 n) {
    if (n < 1) throw std::invalid_argument("mobius expects n >= 1");
    int mu = 1;
    for (auto [p, e] : factorize(n).factors) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

bool is_squarefree(i64 n) { return mobius(n) != 0; }

i64 euler_phi(i64 n) {
    if (n < 1) throw std::invalid_argument("euler_phi expects n >= 1");
    i64 r = n;
    for (auto [p, e] : factorize(n).factors) r = r / p * (p - 1);
    return r;
}

i64 multiplicative_order(i64 a, i64 m) {
    if (gcd(a, m) != 1) throw NotInvertible(mod(a, m), m, gcd(a, m));
    i64 ord = euler_phi(m);
    for (auto [p, e] : factorize(ord).factors) {
        for (int i = 0; i < e && powmod(a, static_cast<u64>(ord / p), m) == 1 % m; ++i) ord /= p;
    }
    return ord;
}

ResidueClass primitive_root(const PrimeModulus& pm) {
    i64 p = pm.value();
    if (p == 2) return ResidueClass(1, 2);
    auto qs = factorize(p - 1).prime_factors();
    for (i64 g = 2; g < p; ++g) {
        bool ok = std::all_of(qs.begin(), qs.end(),
                              [&](i64 q) { return powmod(g, static_cast<u64>((p - 1) / q), p) != 1; });
        if (ok) return ResidueClass(g, p);
    }
    throw std::logic_error("no primitive root found");
}

std::vector<i64> units(i64 q) {
    std::vector<i64> out;
    if (q == 1) return {0};
    for (i64 h = 1; h < q; ++h)
        if (gcd(h, q) == 1) out.push_back(h);
    return out;
}

}  // namespace ntw
