#pragma once

#include <stdexcept>

#include "tau2/characters.hpp"
#include "tau2/summation.hpp"

namespace ntw {

inline constexpr double kEulerGamma = 0.57721566490153286060651209;

class PoleError : public std::domain_error {
public:
    PoleError(const char* what, Complex where) : std::domain_error(what), location(where) {}
    Complex location;
};

// principal branch base^z for base > 0
inline Complex rpow(double base, Complex z) { return std::exp(z * std::log(base)); }

Complex gamma(Complex s);
// shadows the C library's gamma (which is log-gamma) inside this namespace
inline Complex gamma(double x) { return gamma(Complex(x, 0.0)); }

// a logarithm of Gamma (not necessarily the principal branch); exp(log_gamma) = gamma
Complex log_gamma(Complex s);

// digamma for real x > 0
double digamma(double x);

struct EulerMaclaurinParams {
    int N;
    int M;

    static EulerMaclaurinParams for_point(Complex s);
};

struct HurwitzValue {
    Complex value;
    double error_estimate;
    EulerMaclaurinParams params;
};

HurwitzValue hurwitz_zeta_ex(Complex s, double a);
HurwitzValue hurwitz_zeta_ex(Complex s, double a, EulerMaclaurinParams params);
Complex hurwitz_zeta(Complex s, double a);
Complex riemann_zeta(Complex s);

Complex dirichlet_L(Complex s, const DirichletCharacter& chi);

double check_zeta_fe(Complex s);
double check_L_fe(Complex s, const DirichletCharacter& chi);

// B_{2k}/(2k)! for k = 1..21
double bernoulli_over_factorial(int k);

}  // namespace ntw
