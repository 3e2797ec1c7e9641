#pragma once

#include <complex>
#include <vector>

#include "tau2/arith.hpp"
#include "tau2/summation.hpp"

namespace ntw {

// e^{2 pi i t / q}, exact at multiples of a quarter turn
Complex unit_root(i64 t, i64 q);

class RootsOfUnityTable {
public:
    explicit RootsOfUnityTable(i64 q);
    i64 modulus() const { return q_; }
    const Complex& operator[](i64 t) const { return v_[static_cast<std::size_t>(mod(t, q_))]; }
    Complex at_reduced(i64 t) const { return v_[static_cast<std::size_t>(t)]; }

private:
    i64 q_;
    std::vector<Complex> v_;
};

Complex e_q(i64 t, i64 q);

Complex kloosterman(i64 m, i64 n, i64 q);
Complex kloosterman(i64 m, i64 n, i64 q, const RootsOfUnityTable& roots);

Complex hyper_kloosterman(int k, const ResidueClass& A, const PrimeModulus& p);

Complex ramanujan_sum(i64 q, i64 a);
// sum_{d | gcd(q,a)} d mu(q/d)
i64 ramanujan_sum_divisor(i64 q, i64 a);

struct WeilCheck {
    double bound;
    bool holds;
    double abs_value;
};

WeilCheck weil_bound_check(i64 m, i64 n, i64 q);

}  // namespace ntw
