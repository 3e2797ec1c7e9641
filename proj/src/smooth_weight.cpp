#include "tau2/smooth_weight.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ntw {

namespace {

constexpr double kLog2 = std::numbers::ln2;

// trapezoid in u = log x over [0, log 2] with n intervals; endpoints vanish
Complex mellin_trapezoid(const SmoothWeight& W, Complex s, std::size_t n) {
    const double h = kLog2 / double(n);
    KahanSum<Complex> acc;
    for (std::size_t k = 1; k < n; ++k) {
        double u = h * double(k);
        acc += W(std::exp(u)) * std::exp(s * u);
    }
    return h * acc.value();
}

}  // namespace

SmoothWeight::SmoothWeight(double scale) : scale_(scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("weight scale must be positive");
}

double SmoothWeight::operator()(double x) const {
    if (x <= 1.0 || x >= 2.0) return 0.0;
    return scale_ * std::exp(-1.0 / ((x - 1.0) * (2.0 - x)));
}

std::string SmoothWeight::tag() const {
    if (scale_ == 1.0) return "bump";
    char buf[64];
    std::snprintf(buf, sizeof buf, "bump*%.17g", scale_);
    return buf;
}

Complex SmoothWeight::mellin(Complex s, double tol) const {
    std::size_t n = 32;
    Complex prev = mellin_trapezoid(*this, s, n);
    for (n *= 2; n <= (std::size_t{1} << 22); n *= 2) {
        Complex cur = mellin_trapezoid(*this, s, n);
        if (std::abs(cur - prev) < tol) return cur;
        prev = cur;
    }
    throw std::runtime_error("Mellin quadrature did not converge");
}

MellinLine::MellinLine(const SmoothWeight& W, double sigma, double h, std::size_t n, double tol)
    : sigma_(sigma), h_(h) {
    const double tmax = h * double(n);
    auto line = [&](std::size_t nodes) {
        const double du = kLog2 / double(nodes);
        std::vector<double> g(nodes + 1, 0.0);
        for (std::size_t k = 1; k < nodes; ++k) {
            double u = du * double(k);
            g[k] = W(std::exp(u)) * std::exp(sigma * u) * du;
        }
        std::vector<Complex> out(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            double t = h * double(j);
            KahanSum<Complex> acc;
            for (std::size_t k = 1; k < nodes; ++k) acc += g[k] * std::polar(1.0, t * du * double(k));
            out[j] = acc.value();
        }
        return out;
    };
    // node count fixed by convergence at the top of the line
    std::size_t nodes = 64;
    Complex prev = mellin_trapezoid(W, Complex(sigma, tmax), nodes);
    for (nodes *= 2;; nodes *= 2) {
        if (nodes > (std::size_t{1} << 22)) throw std::runtime_error("Mellin line did not converge");
        Complex cur = mellin_trapezoid(W, Complex(sigma, tmax), nodes);
        Complex mid = mellin_trapezoid(W, Complex(sigma, 0.5 * tmax), nodes);
        Complex mid_prev = mellin_trapezoid(W, Complex(sigma, 0.5 * tmax), nodes / 2);
        if (std::abs(cur - prev) < tol && std::abs(mid - mid_prev) < tol) break;
        prev = cur;
    }
    nodes_ = nodes;
    v_ = line(nodes);
}

}  // namespace ntw
