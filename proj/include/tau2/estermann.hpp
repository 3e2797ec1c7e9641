#pragma once

#include <optional>
#include <vector>

#include "tau2/arith.hpp"
#include "tau2/report.hpp"
#include "tau2/special.hpp"

namespace ntw {

enum class SeriesMethod { direct_series, hurwitz_continuation };
const char* to_string(SeriesMethod m);

struct EstermannEvaluation {
    Complex s;
    i64 q = 1;
    i64 A = 0;
    Complex value;
    SeriesMethod method = SeriesMethod::hurwitz_continuation;
    double cutoff = 0.0;          // window centre for the direct series
    double error_estimate = 0.0;
};

struct GFactor {
    Complex s;
    Complex value;
    static GFactor at(Complex s);
};

// H[r] = sum over c, d in [1, q] with c d = r (mod q) of zeta(s, c/q) zeta(s, d/q),
// so that E2(s; q, A) = q^{-2s} sum_r e_q(rA) H[r].
class HurwitzConvolution {
public:
    HurwitzConvolution(Complex s, i64 q);
    Complex s() const { return s_; }
    i64 q() const { return q_; }
    const std::vector<Complex>& table() const { return H_; }
    Complex scale() const { return scale_; }

    Complex estermann(i64 A) const;
    Complex d2(i64 A, const std::vector<Complex>& kloos) const;
    // sum of tau(n) n^{-s} over n = B (mod q)
    Complex residue_class(i64 B) const;

private:
    Complex s_;
    i64 q_;
    std::vector<Complex> H_;
    Complex scale_;
};

// Kloos2(r; q) = S(1, r; q) for r in [0, q)
std::vector<Complex> kloosterman_row(i64 q);

// Smoothed Dirichlet series for Re s > 1: sum of a_n n^{-s} phi(n) with the window
// phi(x) = erfc(kappa log(x/N)) / 2, plus the integral of the main-term density
// against 1 - phi.
class SmoothedSeries {
public:
    explicit SmoothedSeries(Complex s, double centre = 1e6, double kappa = 17.0);

    Complex s() const { return s_; }
    double centre() const { return centre_; }
    i64 last_index() const { return n_hi_; }

    // sums of tau(n) n^{-s} phi(n) over each residue class mod q
    std::vector<Complex> residue_sums(i64 q) const;
    // integral of (log x + 2 gamma - 2 log q)/q x^{-s} (1 - phi(x)) dx over [1, inf)
    Complex main_tail(i64 q) const;
    double error_estimate(i64 q) const;

private:
    Complex s_;
    double centre_, kappa_;
    i64 n_hi_;
    std::vector<Complex> w_;    // tau(n) n^{-s} phi(n), index n
};

EstermannEvaluation estermann_E2(Complex s, i64 q, i64 A);
EstermannEvaluation estermann_E2(Complex s, i64 q, i64 A, SeriesMethod method);
Complex estermann_partial_sum(Complex s, i64 q, i64 A, i64 N);

struct LaurentCoefficients {
    Complex c_minus2, c_minus1, c0;
};
template <class F>
LaurentCoefficients laurent_fit(F&& f, double radius = 0.01, int points = 64);

struct ResidueCheck {
    double laurent_c2;
    Complex laurent_c1;
    double residual;
};

ResidueCheck estermann_residue_check(i64 q, i64 A);
double estermann_fe_check(Complex s, i64 q, i64 A);

EstermannEvaluation d2_value(Complex s, i64 q, i64 A);
EstermannEvaluation d2_value(Complex s, i64 q, i64 A, SeriesMethod method);
ResidueCheck d2_residue_check(i64 q, i64 A);

// residue checks for every unit A mod q (ascending), sharing the Hurwitz tables
std::vector<ResidueCheck> estermann_residue_checks(i64 q);
std::vector<ResidueCheck> d2_residue_checks(i64 q);

// direct series against continuation for every unit A mod q, from one smoothed series
struct DualCheck {
    i64 q = 1;
    std::vector<i64> units;
    std::vector<Complex> e2_direct, e2_continuation, d2_direct, d2_continuation;
    double max_e2_diff = 0.0, max_d2_diff = 0.0;
};
DualCheck dual_evaluation_check(const SmoothedSeries& S, i64 q);

enum class CongruenceModulus { divisor, full };
const char* to_string(CongruenceModulus m);

// sum of tau(n) n^{-w} over n = B (mod d)
Complex divisor_class_series(Complex w, i64 B, i64 d);

double d2_fe_check(Complex s, i64 q, i64 A, CongruenceModulus modulus = CongruenceModulus::divisor);
Adjudication adjudicate_d2_fe_modulus(const std::vector<i64>& qs, const std::vector<Complex>& points, double tol = 1e-6);

enum class DecompositionForm { printed, corrected };
const char* to_string(DecompositionForm f);
double d2_char_decomposition_check(Complex s, i64 p, i64 A, DecompositionForm form = DecompositionForm::printed);

struct ConvexityRow {
    i64 p;
    double sigma, t;
    i64 A;
    double abs_d2;
    double convexity_ratio;
};

std::vector<ConvexityRow> d2_convexity_probe(const std::vector<i64>& primes, const std::vector<double>& sigmas,
                                             const std::vector<double>& ts, std::size_t samples, std::uint64_t seed);

// ---- implementation of the template ----

template <class F>
LaurentCoefficients laurent_fit(F&& f, double radius, int points) {
    Complex cm2 = 0.0, cm1 = 0.0, c0 = 0.0;
    for (int j = 0; j < points; ++j) {
        double th = 2.0 * 3.14159265358979323846 * j / points;
        Complex z = std::polar(1.0, th);
        Complex v = f(1.0 + radius * z);
        cm2 += v * radius * radius * z * z;
        cm1 += v * radius * z;
        c0 += v;
    }
    return {cm2 / double(points), cm1 / double(points), c0 / double(points)};
}

}  // namespace ntw
