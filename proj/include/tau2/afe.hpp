#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "tau2/arith.hpp"
#include "tau2/characters.hpp"
#include "tau2/special.hpp"

namespace ntw {

struct VWeightParams {
    double contour_abscissa = 1.0;
    double truncation_height = 10.0;    // T_V
    double quadrature_step = 1.0 / 128.0;
};

// V(y) = (1/2 pi i) int_(c) pi^{-w} e^{w^2} cos^2(pi w) / w * R(w) y^{-w} dw with
//   R(w) = Gamma((s+w+a)/2) Gamma((1-s+w+a)/2) / (Gamma((s+a)/2) Gamma((1-s+a)/2)),
// s = 1/2 + i t. At t = 0 this is the printed weight with Gamma((1/2+w+a)/2)^2 on top.
// For t = 0 and y < 1 the contour is moved to Re w = -1 and the residue 1 at w = 0
// is added; the Gamma poles at w = -1/2 - a are cancelled by the zeros of cos^2.
class VWeight {
public:
    explicit VWeight(int parity, double t = 0.0, VWeightParams params = {});

    int parity() const { return parity_; }
    double t() const { return t_; }
    const VWeightParams& params() const { return params_; }

    double operator()(double y) const;
    // imaginary part of the quadrature sum, zero up to rounding
    double imag_part(double y) const;

    // (1/2 pi) int |integrand without y^{-w}| over Re w = B; |V(y)| <= C_B y^{-B} for B > 0
    double decay_constant(double B) const;

private:
    struct Line {
        double c;
        std::vector<Complex> g;    // integrand at c + i j h without y^{-w}
    };
    Line make_line(double c) const;
    Complex eval(const Line& L, double y) const;

    int parity_;
    double t_;
    VWeightParams params_;
    Line right_, left_;
    bool use_left_;
};

// Piecewise Chebyshev interpolant of V in u = log y on [y_min, y_max]. Panels have
// width 1/4 in u and 25 nodes; node values come from the quadrature above.
class VTable {
public:
    VTable(const VWeight& V, double y_min, double y_max);
    double operator()(double y) const;
    double y_min() const { return std::exp(u0_); }
    double y_max() const { return std::exp(u0_ + width_ * double(panels_)); }

    static constexpr int kNodes = 25;

private:
    double u0_;
    double width_ = 0.25;
    std::size_t panels_;
    std::vector<double> coef_;    // kNodes Chebyshev coefficients per panel
};

struct BilinearTruncation {
    double cutoff;        // Y: terms with mn <= Y are summed
    double tail_bound;
};

// Smallest cutoff Y = q * 2^k with C_B q^B sum_{n > Y} tau(n) n^{-1/2-B} < target for some B.
BilinearTruncation choose_truncation(const VWeight& V, double q, double target);

enum class AfeWeight { printed, shifted };
const char* to_string(AfeWeight w);

struct AfeResult {
    Complex lhs;
    Complex rhs;
    double residual;      // |lhs - rhs| / max(1, |lhs|)
    BilinearTruncation truncation;
};

// L(1-s, chi) L(s, conj chi) against 2 sum chi(m) conj(chi)(n) m^{-(1-s)} n^{-s} V(mn/p)
AfeResult afe_check(double t, const DirichletCharacter& chi, AfeWeight weight = AfeWeight::printed,
                    double target = 1e-9);
// the same for every primitive character mod p, in index order; weights are shared
std::vector<AfeResult> afe_check_all(double t, i64 p, AfeWeight weight = AfeWeight::printed, double target = 1e-9);

struct BilinearValue {
    Complex value;
    double tail_bound;
    double cutoff;
};

// sum over (mn, q) = 1, mn <= Y of e_q(A n conj(m)) n^{-s} m^{-(1-s)} V(mn/q), s = 1/2 + i t
class BilinearForm {
public:
    BilinearForm(i64 q, double t, int parity, double target = 1e-4, VWeightParams params = {});
    BilinearForm(i64 q, double t, int parity, double cutoff, double tail_bound, VWeightParams params = {});

    i64 q() const { return q_; }
    BilinearValue at(i64 A) const;
    // coefficients c(r) with B(A) = sum_r e_q(A r) c(r)
    const std::vector<Complex>& coefficients() const { return c_; }

private:
    void build(double t, int parity, VWeightParams params);
    i64 q_;
    double cutoff_, tail_;
    std::vector<Complex> c_;
};

BilinearValue bilinear_form(double t, i64 q, i64 A, int parity, double target = 1e-4);

struct ProbeRow {
    i64 q;
    i64 A;               // unit attaining max |B0|
    double t;
    double max_B0, max_B1;
    double mean_B0, mean_B1;
    double tail_bound;
};

struct ProbeSample {
    i64 q, A;
    double t;
    double abs_B0, abs_B1;
    double tail_bound;
};

struct ProbeResult {
    std::vector<ProbeRow> rows;
    std::vector<ProbeSample> samples;
};

ProbeResult conjecture_probe(const std::vector<i64>& primes, std::size_t samples_per_prime, double t,
                             std::uint64_t seed, double target = 1e-4);

struct PartialSum {
    Complex value;
    double bound_ratio;    // |value| / (p^{1/2} N1^{-1/2})
};

// sum over N1 < n <= N of tau(n) S(1, a n; p) n^{-s}
PartialSum kloosterman_dirichlet_partial(Complex s, i64 p, i64 a, i64 N1, i64 N);

// (1/phi(q)) sum over all chi mod q of chi(-A) L(1-s+z, conj chi) L(1-s-w, conj chi)
Complex twisted_second_moment(Complex s, i64 q, Complex z, Complex w, i64 A);

}  // namespace ntw
