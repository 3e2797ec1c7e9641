#include "tau2/estermann.hpp"

#include <cmath>
#include <numbers>

#include "tau2/exp_sums.hpp"
#include "tau2/kernels.hpp"
#include "tau2/sampling.hpp"
#include "tau2/sieve.hpp"

namespace ntw {

namespace {

constexpr double kPi = std::numbers::pi;

void require_unit(i64 A, i64 q) {
    if (q < 1) throw std::invalid_argument("modulus must be >= 1");
    if (gcd(A, q) != 1) throw NotInvertible(mod(A, q), q, gcd(A, q));
}

void require_not_pole(Complex s) {
    if (s == Complex(1.0, 0.0)) throw PoleError("double pole at s = 1", s);
}

}  // namespace

const char* to_string(SeriesMethod m) {
    return m == SeriesMethod::direct_series ? "direct-series" : "hurwitz-continuation";
}

const char* to_string(CongruenceModulus m) { return m == CongruenceModulus::divisor ? "divisor" : "full"; }

const char* to_string(DecompositionForm f) { return f == DecompositionForm::printed ? "printed" : "corrected"; }

GFactor GFactor::at(Complex s) {
    return {s, Complex(0.0, -1.0) * rpow(2.0 * kPi, s - 1.0) * gamma(1.0 - s)};
}

HurwitzConvolution::HurwitzConvolution(Complex s, i64 q) : s_(s), q_(q) {
    require_not_pole(s);
    if (q < 1) throw std::invalid_argument("modulus must be >= 1");
    std::vector<Complex> Z(static_cast<std::size_t>(q) + 1);
    for (i64 c = 1; c <= q; ++c) Z[c] = hurwitz_zeta(s, double(c) / double(q));
    std::vector<KahanSum<Complex>> acc(static_cast<std::size_t>(q));
    for (i64 c = 1; c <= q; ++c)
        for (i64 d = 1; d <= q; ++d) acc[static_cast<std::size_t>((c % q) * (d % q) % q)] += Z[c] * Z[d];
    H_.resize(static_cast<std::size_t>(q));
    for (i64 r = 0; r < q; ++r) H_[r] = acc[r].value();
    scale_ = rpow(double(q), -2.0 * s);
}

Complex HurwitzConvolution::estermann(i64 A) const {
    KahanSum<Complex> acc;
    i64 a = mod(A, q_);
    for (i64 r = 0; r < q_; ++r) acc += unit_root(mulmod(r, a, q_), q_) * H_[r];
    return scale_ * acc.value();
}

Complex HurwitzConvolution::d2(i64 A, const std::vector<Complex>& kloos) const {
    KahanSum<Complex> acc;
    i64 a = mod(A, q_);
    for (i64 r = 0; r < q_; ++r) acc += kloos[static_cast<std::size_t>(mulmod(r, a, q_))] * H_[r];
    return scale_ * acc.value();
}

Complex HurwitzConvolution::residue_class(i64 B) const { return scale_ * H_[static_cast<std::size_t>(mod(B, q_))]; }

std::vector<Complex> kloosterman_row(i64 q) { return kernels::kloosterman_table_omp(q); }

// ---------------------------------------------------------------- smoothed series

namespace {
constexpr double kWindowCut = 6.5;    // erfc(6.5)/2 < 1e-20
}

SmoothedSeries::SmoothedSeries(Complex s, double centre, double kappa) : s_(s), centre_(centre), kappa_(kappa) {
    if (!(s.real() > 1.0)) throw std::domain_error("direct series needs Re s > 1");
    n_hi_ = static_cast<i64>(std::ceil(centre * std::exp(kWindowCut / kappa)));
    LinearSieve sv(n_hi_);
    w_.assign(static_cast<std::size_t>(n_hi_) + 1, Complex(0.0, 0.0));
    const double lc = std::log(centre);
    for (i64 n = 1; n <= n_hi_; ++n) {
        double ln = std::log(double(n));
        double phi = 0.5 * std::erfc(kappa * (ln - lc));
        w_[n] = double(sv.tau[n]) * phi * std::exp(-s * ln);
    }
}

std::vector<Complex> SmoothedSeries::residue_sums(i64 q) const {
    std::vector<Complex> tail(w_.begin() + 1, w_.end());
    return kernels::residue_sums_omp(tail, 1, q);
}

Complex SmoothedSeries::main_tail(i64 q) const {
    const double c = 2.0 * kEulerGamma - 2.0 * std::log(double(q));
    const double u0 = std::log(centre_);
    const double ulo = u0 - kWindowCut / kappa_, uhi = u0 + kWindowCut / kappa_;
    auto f = [&](double u) {
        double one_minus_phi = 0.5 * std::erfc(kappa_ * (u0 - u));
        return (u + c) * one_minus_phi * std::exp((1.0 - s_) * u);
    };
    // Simpson in u = log x
    const int n = 4000;
    const double h = (uhi - ulo) / n;
    KahanSum<Complex> acc;
    for (int i = 0; i <= n; ++i) {
        double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * f(ulo + i * h);
    }
    Complex inner = acc.value() * (h / 3.0);
    Complex sm1 = s_ - 1.0;
    Complex outer = std::exp((1.0 - s_) * uhi) * ((uhi + c) / sm1 + 1.0 / (sm1 * sm1));
    return (inner + outer) / double(q);
}

double SmoothedSeries::error_estimate(i64 q) const {
    double w = kPi * std::sqrt(centre_) / (double(q) * kappa_);
    return std::exp(-w * w) + 1e-15 * std::sqrt(double(n_hi_));
}

namespace {

constexpr i64 kDirectMaxModulus = 100;

double auto_centre(i64 q) {
    if (q > kDirectMaxModulus) throw std::domain_error("direct series is limited to q <= 100");
    return std::max(std::pow(double(q) * 17.0 * 6.0 / kPi, 2.0), 1e6);
}

EstermannEvaluation continuation_E2(Complex s, i64 q, i64 A) {
    HurwitzConvolution H(s, q);
    return {s, q, mod(A, q), H.estermann(A), SeriesMethod::hurwitz_continuation, 0.0, 0.0};
}

}  // namespace

EstermannEvaluation estermann_E2(Complex s, i64 q, i64 A, SeriesMethod method) {
    require_unit(A, q);
    require_not_pole(s);
    if (method == SeriesMethod::hurwitz_continuation) return continuation_E2(s, q, A);
    SmoothedSeries S(s, auto_centre(q));
    auto R = S.residue_sums(q);
    KahanSum<Complex> acc;
    for (i64 r = 0; r < q; ++r) acc += unit_root(mulmod(r, A, q), q) * R[r];
    Complex v = acc.value() + S.main_tail(q);
    return {s, q, mod(A, q), v, SeriesMethod::direct_series, S.centre(), S.error_estimate(q)};
}

EstermannEvaluation estermann_E2(Complex s, i64 q, i64 A) {
    bool direct = s.real() > 1.0 && q <= kDirectMaxModulus;
    return estermann_E2(s, q, A, direct ? SeriesMethod::direct_series : SeriesMethod::hurwitz_continuation);
}

Complex estermann_partial_sum(Complex s, i64 q, i64 A, i64 N) {
    require_unit(A, q);
    if (N < 1) return 0.0;
    LinearSieve sv(N);
    KahanSum<Complex> acc;
    for (i64 n = 1; n <= N; ++n)
        acc += double(sv.tau[n]) * unit_root(mulmod(n, A, q), q) * std::exp(-s * std::log(double(n)));
    return acc.value();
}

ResidueCheck estermann_residue_check(i64 q, i64 A) {
    require_unit(A, q);
    auto fit = laurent_fit([&](Complex s) { return continuation_E2(s, q, A).value; });
    double c2 = fit.c_minus2.real();
    Complex expect = 2.0 * (kEulerGamma - std::log(double(q))) / double(q);
    double res = std::max(std::abs(fit.c_minus2 - 1.0 / double(q)), std::abs(fit.c_minus1 - expect));
    return {c2, fit.c_minus1, res};
}

double estermann_fe_check(Complex s, i64 q, i64 A) {
    require_unit(A, q);
    i64 Ab = inverse_mod(A, q);
    Complex lhs = continuation_E2(1.0 - s, q, A).value;
    HurwitzConvolution H(s, q);
    Complex G = GFactor::at(1.0 - s).value;
    Complex rhs = 2.0 * G * G * rpow(double(q), 2.0 * s - 1.0) *
                  (std::cos(kPi * (1.0 - s)) * H.estermann(-Ab) - H.estermann(Ab));
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

EstermannEvaluation d2_value(Complex s, i64 q, i64 A, SeriesMethod method) {
    require_unit(A, q);
    require_not_pole(s);
    auto K = kloosterman_row(q);
    if (method == SeriesMethod::hurwitz_continuation) {
        HurwitzConvolution H(s, q);
        return {s, q, mod(A, q), H.d2(A, K), method, 0.0, 0.0};
    }
    SmoothedSeries S(s, auto_centre(q));
    auto R = S.residue_sums(q);
    KahanSum<Complex> acc;
    for (i64 r = 0; r < q; ++r) acc += K[static_cast<std::size_t>(mulmod(r, A, q))] * R[r];
    Complex v = acc.value() + double(mobius(q)) * S.main_tail(q);
    // Kloosterman coefficients are at most tau(q) sqrt(q) in size
    double err = S.error_estimate(q) * double(tau2(q)) * std::sqrt(double(q));
    return {s, q, mod(A, q), v, method, S.centre(), err};
}

EstermannEvaluation d2_value(Complex s, i64 q, i64 A) { return d2_value(s, q, A, SeriesMethod::hurwitz_continuation); }

ResidueCheck d2_residue_check(i64 q, i64 A) {
    require_unit(A, q);
    auto K = kloosterman_row(q);
    auto fit = laurent_fit([&](Complex s) { return HurwitzConvolution(s, q).d2(A, K); });
    double mu = mobius(q);
    Complex expect = 2.0 * mu * (kEulerGamma - std::log(double(q))) / double(q);
    double res = std::max(std::abs(fit.c_minus2 - mu / double(q)), std::abs(fit.c_minus1 - expect));
    return {fit.c_minus2.real(), fit.c_minus1, res};
}

namespace {

template <class Eval>
std::vector<ResidueCheck> residue_checks_all(i64 q, double mu_factor, Eval eval) {
    auto As = units(q);
    std::vector<std::vector<Complex>> vals(As.size());
    const int points = 64;
    const double radius = 0.01;
    std::vector<Complex> zs;
    for (int j = 0; j < points; ++j) zs.push_back(std::polar(1.0, 2.0 * kPi * j / points));
    for (int j = 0; j < points; ++j) {
        HurwitzConvolution H(1.0 + radius * zs[j], q);
        for (std::size_t i = 0; i < As.size(); ++i) vals[i].push_back(eval(H, As[i]));
    }
    Complex expect1 = 2.0 * mu_factor * (kEulerGamma - std::log(double(q))) / double(q);
    double expect2 = mu_factor / double(q);
    std::vector<ResidueCheck> out;
    for (auto& v : vals) {
        int j = 0;
        auto fit = laurent_fit([&](Complex) { return v[j++]; }, radius, points);
        double res = std::max(std::abs(fit.c_minus2 - expect2), std::abs(fit.c_minus1 - expect1));
        out.push_back({fit.c_minus2.real(), fit.c_minus1, res});
    }
    return out;
}

}  // namespace

std::vector<ResidueCheck> estermann_residue_checks(i64 q) {
    return residue_checks_all(q, 1.0, [](const HurwitzConvolution& H, i64 A) { return H.estermann(A); });
}

std::vector<ResidueCheck> d2_residue_checks(i64 q) {
    auto K = kloosterman_row(q);
    return residue_checks_all(q, double(mobius(q)),
                              [&](const HurwitzConvolution& H, i64 A) { return H.d2(A, K); });
}

DualCheck dual_evaluation_check(const SmoothedSeries& S, i64 q) {
    if (q < 1) throw std::invalid_argument("modulus must be >= 1");
    DualCheck d;
    d.q = q;
    d.units = units(q);
    auto R = S.residue_sums(q);
    Complex tail = S.main_tail(q);
    auto K = kloosterman_row(q);
    HurwitzConvolution H(S.s(), q);
    for (i64 A : d.units) {
        KahanSum<Complex> e, k;
        for (i64 r = 0; r < q; ++r) {
            e += unit_root(mulmod(r, A, q), q) * R[r];
            k += K[static_cast<std::size_t>(mulmod(r, A, q))] * R[r];
        }
        d.e2_direct.push_back(e.value() + tail);
        d.d2_direct.push_back(k.value() + double(mobius(q)) * tail);
        d.e2_continuation.push_back(H.estermann(A));
        d.d2_continuation.push_back(H.d2(A, K));
        d.max_e2_diff = std::max(d.max_e2_diff, std::abs(d.e2_direct.back() - d.e2_continuation.back()));
        d.max_d2_diff = std::max(d.max_d2_diff, std::abs(d.d2_direct.back() - d.d2_continuation.back()));
    }
    return d;
}

Complex divisor_class_series(Complex w, i64 B, i64 d) {
    if (d == 1) {
        Complex z = riemann_zeta(w);
        return z * z;
    }
    return HurwitzConvolution(w, d).residue_class(B);
}

double d2_fe_check(Complex s, i64 q, i64 A, CongruenceModulus modulus) {
    require_unit(A, q);
    Complex lhs = d2_value(s, q, A).value;
    Complex G = GFactor::at(s).value;
    Complex cs = std::cos(kPi * s);
    KahanSum<Complex> acc;
    for (i64 d : factorize(q).divisors()) {
        int mu = mobius(q / d);
        if (mu == 0) continue;
        i64 m = modulus == CongruenceModulus::divisor ? d : q;
        Complex t = cs * divisor_class_series(1.0 - s, A, m) - divisor_class_series(1.0 - s, -A, m);
        acc += double(d * mu) * t;
    }
    Complex rhs = 2.0 * G * G * rpow(double(q), 1.0 - 2.0 * s) * acc.value();
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

Adjudication adjudicate_d2_fe_modulus(const std::vector<i64>& qs, const std::vector<Complex>& points, double tol) {
    Adjudication adj;
    adj.question = "d2-fe-modulus";
    adj.tolerance = tol;
    adj.candidates = {{"divisor", "inner sums over n = +-A (mod d)", 0.0, false},
                      {"full", "inner sums over n = +-A (mod q)", 0.0, false}};
    for (i64 q : qs)
        for (i64 A : units(q))
            for (Complex s : points) {
                ++adj.cases;
                adj.candidates[0].max_abs_diff =
                    std::max(adj.candidates[0].max_abs_diff, d2_fe_check(s, q, A, CongruenceModulus::divisor));
                adj.candidates[1].max_abs_diff =
                    std::max(adj.candidates[1].max_abs_diff, d2_fe_check(s, q, A, CongruenceModulus::full));
            }
    for (auto& c : adj.candidates) c.matches = c.max_abs_diff < tol;
    return adj;
}

double d2_char_decomposition_check(Complex s, i64 p, i64 A, DecompositionForm form) {
    PrimeModulus pm(p);
    require_unit(A, p);
    require_not_pole(s);
    Complex lhs = d2_value(s, p, A).value;
    auto G = CharacterGroup::make(p);
    Complex z = riemann_zeta(s);
    Complex ps = form == DecompositionForm::printed ? rpow(double(p), s - 1.0) : rpow(double(p), -s);
    KahanSum<Complex> acc;
    for (auto& chi : G->primitive()) {
        double a = chi.parity();
        Complex ia = chi.parity() ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
        Complex g = gamma(0.5 * (1.0 - s + a)) / gamma(0.5 * (s + a));
        acc += std::conj(chi(A)) * gauss_sum(chi) * ia * rpow(kPi, s - 0.5) * ps * g * dirichlet_L(1.0 - s, chi) *
               dirichlet_L(s, chi.conj());
    }
    double pp = double(p);
    Complex principal;
    if (form == DecompositionForm::printed) {
        principal = z * z / (pp - 1.0);
    } else {
        Complex e = 1.0 - rpow(pp, -s);
        principal = z * z * (e * e * pp / (pp - 1.0) - 1.0);
    }
    Complex rhs = principal + pp / (pp - 1.0) * acc.value();
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

std::vector<ConvexityRow> d2_convexity_probe(const std::vector<i64>& primes, const std::vector<double>& sigmas,
                                             const std::vector<double>& ts, std::size_t samples, std::uint64_t seed) {
    struct Cell {
        i64 p;
        double sigma, t;
    };
    std::vector<Cell> cells;
    for (i64 p : primes) {
        PrimeModulus pm(p);
        for (double sg : sigmas) {
            if (sg < 0.0 || sg > 1.0) throw std::invalid_argument("convexity probe needs sigma in [0, 1]");
            for (double t : ts)
                if (!(sg == 1.0 && t == 0.0)) cells.push_back({p, sg, t});
        }
    }
    std::vector<std::vector<ConvexityRow>> out(cells.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto [p, sg, t] = cells[i];
        auto As = seeded_sample(units(p), samples, mix_seed(seed, static_cast<std::uint64_t>(p)));
        auto K = kloosterman_row(p);
        HurwitzConvolution H(Complex(sg, t), p);
        double scale = std::pow(double(p), -1.5 * sg + 2.0);
        for (i64 A : As) {
            double v = std::abs(H.d2(A, K));
            out[i].push_back({p, sg, t, A, v, v / scale});
        }
    }
    std::vector<ConvexityRow> rows;
    for (auto& v : out) rows.insert(rows.end(), v.begin(), v.end());
    return rows;
}

}  // namespace ntw
