#include "tau2/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace ntw {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Bernoulli numbers B_2 .. B_42 as numerator/denominator
constexpr std::array<std::pair<double, double>, 21> kBernoulli = {{
    {1.0, 6.0},
    {-1.0, 30.0},
    {1.0, 42.0},
    {-1.0, 30.0},
    {5.0, 66.0},
    {-691.0, 2730.0},
    {7.0, 6.0},
    {-3617.0, 510.0},
    {43867.0, 798.0},
    {-174611.0, 330.0},
    {854513.0, 138.0},
    {-236364091.0, 2730.0},
    {8553103.0, 6.0},
    {-23749461029.0, 870.0},
    {8615841276005.0, 14322.0},
    {-7709321041217.0, 510.0},
    {2577687858367.0, 6.0},
    {-26315271553053477373.0, 1919190.0},
    {2929993913841559.0, 6.0},
    {-261082718496449122051.0, 13530.0},
    {1520097643918070802691.0, 1806.0},
}};

Complex lanczos_gamma(Complex z) {
    z -= 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
    Complex t = z + 7.5;
    Complex lg = 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
    return std::exp(lg);
}

}  // namespace

double bernoulli_over_factorial(int k) {
    if (k < 1 || k > 21) throw std::out_of_range("bernoulli index");
    double f = 1.0;
    for (int i = 2; i <= 2 * k; ++i) f *= i;
    return kBernoulli[k - 1].first / kBernoulli[k - 1].second / f;
}

Complex log_gamma(Complex s) {
    if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real()))
        throw PoleError("gamma pole", s);
    // shift up with the recurrence, then Stirling
    Complex shift = 0.0;
    Complex z = s;
    while (std::abs(z) < 20.0 || z.real() < 1.0) {
        shift += std::log(z);
        z += 1.0;
    }
    Complex z2 = z * z, pw = 1.0 / z, series = 0.0;
    double fact = 1.0;    // (2k-2)!
    for (int k = 1; k <= 10; ++k) {
        if (k > 1) fact *= double(2 * k - 3) * double(2 * k - 2);
        series += bernoulli_over_factorial(k) * fact * pw;
        pw /= z2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

Complex gamma(Complex s) {
    if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real()))
        throw PoleError("gamma pole", s);
    if (s.real() < 0.5) return kPi / (std::sin(kPi * s) * lanczos_gamma(1.0 - s));
    return lanczos_gamma(s);
}

EulerMaclaurinParams EulerMaclaurinParams::for_point(Complex s) {
    int n = std::max({30, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))),
                      static_cast<int>(std::ceil(std::abs(s))) + 1});
    return {n, 20};
}

HurwitzValue hurwitz_zeta_ex(Complex s, double a) { return hurwitz_zeta_ex(s, a, EulerMaclaurinParams::for_point(s)); }

HurwitzValue hurwitz_zeta_ex(Complex s, double a, EulerMaclaurinParams prm) {
    if (s == Complex(1.0, 0.0)) throw PoleError("hurwitz zeta pole at s = 1", s);
    if (!(a > 0.0)) throw std::invalid_argument("hurwitz zeta needs a > 0");
    if (prm.M < 1 || prm.M > 20) throw std::invalid_argument("Euler-Maclaurin order out of range");

    // extended precision: for Re s < 0 the direct terms cancel against the integral term
    using LC = std::complex<long double>;
    LC sl(s.real(), s.imag());
    LC direct = 0.0L;
    for (int n = prm.N - 1; n >= 0; --n) direct += std::exp(-sl * std::log(static_cast<long double>(n) + a));

    long double x = prm.N + static_cast<long double>(a);
    long double lx = std::log(x);
    LC xs = std::exp(-sl * lx);
    LC val = direct + x * xs / (sl - 1.0L) + 0.5L * xs;

    // rising factorial s (s+1) ... (s+2k-2) times x^{-s-2k+1}
    LC rising = sl;
    LC pw = xs / x;
    LC term = 0.0L;
    for (int k = 1; k <= prm.M + 1; ++k) {
        term = static_cast<long double>(bernoulli_over_factorial(k)) * rising * pw;
        if (k <= prm.M) val += term;
        rising *= (sl + static_cast<long double>(2 * k - 1)) * (sl + static_cast<long double>(2 * k));
        pw /= x * x;
    }
    return {Complex(static_cast<double>(val.real()), static_cast<double>(val.imag())),
            static_cast<double>(std::abs(term)), prm};
}

double digamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("digamma needs x > 0");
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double x2 = 1.0 / (x * x);
    // psi(x) ~ log x - 1/(2x) - sum B_{2k}/(2k x^{2k})
    double series = 0.0, pw = x2;
    for (int k = 1; k <= 8; ++k) {
        double f = 1.0;
        for (int i = 2; i <= 2 * k - 1; ++i) f *= i;
        series += bernoulli_over_factorial(k) * f * pw;
        pw *= x2;
    }
    return acc + std::log(x) - 0.5 / x - series;
}

Complex hurwitz_zeta(Complex s, double a) { return hurwitz_zeta_ex(s, a).value; }

Complex riemann_zeta(Complex s) { return hurwitz_zeta(s, 1.0); }

Complex dirichlet_L(Complex s, const DirichletCharacter& chi) {
    i64 p = chi.modulus();
    if (s == Complex(1.0, 0.0)) {
        if (chi.is_principal()) throw PoleError("principal L-function pole at s = 1", s);
        // the Hurwitz poles cancel; L(1, chi) = -(1/p) sum chi(a) psi(a/p)
        Complex acc = 0.0;
        for (i64 a = 1; a < p; ++a) acc += chi(a) * digamma(double(a) / double(p));
        return -acc / double(p);
    }
    Complex acc = 0.0;
    for (i64 a = 1; a < p; ++a) acc += chi(a) * hurwitz_zeta(s, double(a) / double(p));
    return rpow(double(p), -s) * acc;
}

double check_zeta_fe(Complex s) {
    Complex lhs = riemann_zeta(1.0 - s);
    Complex rhs = rpow(2.0, 1.0 - s) * rpow(kPi, -s) * std::sin(0.5 * (1.0 - s) * kPi) * gamma(s) * riemann_zeta(s);
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

double check_L_fe(Complex s, const DirichletCharacter& chi) {
    if (chi.is_principal()) throw std::invalid_argument("check_L_fe needs a primitive character");
    double a = chi.parity();
    double p = double(chi.modulus());
    Complex ia = chi.parity() ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
    Complex lhs = dirichlet_L(1.0 - s, chi.conj());
    Complex rhs = ia * rpow(kPi, 0.5 - s) * rpow(p, s - 1.0) * gamma(0.5 * (s + a)) / gamma(0.5 * (1.0 - s + a)) *
                  std::conj(gauss_sum(chi)) * dirichlet_L(s, chi);
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

}  // namespace ntw
