#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

namespace ntw {

using Complex = std::complex<double>;

// Neumaier variant of compensated summation. Works for double and Complex.
template <class T>
class KahanSum {
public:
    void add(const T& x) {
        if constexpr (std::is_same_v<T, Complex>) {
            re_.add(x.real());
            im_.add(x.imag());
        } else {
            T t = s_ + x;
            if (std::abs(s_) >= std::abs(x))
                c_ += (s_ - t) + x;
            else
                c_ += (x - t) + s_;
            s_ = t;
        }
    }
    KahanSum& operator+=(const T& x) {
        add(x);
        return *this;
    }
    T value() const {
        if constexpr (std::is_same_v<T, Complex>)
            return {re_.value(), im_.value()};
        else
            return s_ + c_;
    }

private:
    struct Empty {};
    T s_{}, c_{};
    std::conditional_t<std::is_same_v<T, Complex>, KahanSum<double>, Empty> re_{}, im_{};
};

}  // namespace ntw
