#pragma once

#include <string>
#include <vector>

#include "tau2/summation.hpp"

namespace ntw {

// c * exp(-1/((x-1)(2-x))) on (1, 2), zero elsewhere
class SmoothWeight {
public:
    explicit SmoothWeight(double scale = 1.0);

    double operator()(double x) const;
    double scale() const { return scale_; }
    std::string tag() const;

    // int_1^2 W(x) x^{s-1} dx by the trapezoid rule in u = log x, doubled until
    // successive values differ by less than tol
    Complex mellin(Complex s, double tol = 1e-13) const;

private:
    double scale_;
};

// Mellin transform on a vertical line at t_k = k h, k = 0..n, sharing one set of nodes.
class MellinLine {
public:
    MellinLine(const SmoothWeight& W, double sigma, double h, std::size_t n, double tol = 1e-13);

    double sigma() const { return sigma_; }
    double step() const { return h_; }
    std::size_t size() const { return v_.size(); }
    const Complex& operator[](std::size_t k) const { return v_[k]; }
    std::size_t nodes() const { return nodes_; }

private:
    double sigma_, h_;
    std::size_t nodes_;
    std::vector<Complex> v_;
};

}  // namespace ntw
