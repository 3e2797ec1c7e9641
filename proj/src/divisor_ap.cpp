#include "tau2/divisor_ap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "tau2/estermann.hpp"
#include "tau2/kernels.hpp"
#include "tau2/sampling.hpp"
#include "tau2/special.hpp"

namespace ntw {

namespace {

constexpr double kPi = std::numbers::pi;

struct SmoothRange {
    i64 lo = 1;
    std::vector<double> w;    // tau(n) W(n/X) for n = lo + i
};

SmoothRange smooth_terms(double X, const SmoothWeight& W) {
    if (!(X >= 2.0)) throw std::invalid_argument("smooth sums need X >= 2");
    SmoothRange r;
    r.lo = static_cast<i64>(std::floor(X)) + 1;
    i64 hi = static_cast<i64>(std::ceil(2.0 * X)) - 1;
    if (hi < r.lo) return r;
    auto tau = kernels::tau_segment_omp(r.lo, hi);
    r.w.resize(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) r.w[i] = double(tau[i]) * W(double(r.lo + i) / X);
    return r;
}

double total(const std::vector<double>& v) {
    KahanSum<double> acc;
    for (double x : v) acc += x;
    return acc.value();
}

// sums over units mod q from residue-class sums, ascending residue
double coprime_part(const std::vector<double>& classes, i64 q) {
    KahanSum<double> acc;
    for (i64 r : units(q)) acc += classes[static_cast<std::size_t>(r)];
    return acc.value();
}

}  // namespace

std::vector<double> smooth_residue_sums(double X, i64 q, const SmoothWeight& W) {
    if (q < 1) throw std::invalid_argument("modulus must be >= 1");
    auto r = smooth_terms(X, W);
    if (r.w.empty()) return std::vector<double>(static_cast<std::size_t>(q), 0.0);
    return kernels::residue_sums_omp(r.w, r.lo, q);
}

double ap_sum_smooth(double X, i64 q, i64 a, const SmoothWeight& W) {
    if (gcd(a, q) != 1) throw NotInvertible(mod(a, q), q, gcd(a, q));
    return smooth_residue_sums(X, q, W)[static_cast<std::size_t>(mod(a, q))];
}

double coprime_sum_smooth(double X, i64 q, const SmoothWeight& W) {
    return coprime_part(smooth_residue_sums(X, q, W), q);
}

double full_sum_smooth(double X, const SmoothWeight& W) { return total(smooth_terms(X, W).w); }

std::vector<DiscrepancyRecord> delta_discrepancies(double X, i64 p, const std::vector<i64>& as,
                                                   const SmoothWeight& W) {
    PrimeModulus pm(p);
    auto classes = smooth_residue_sums(X, p, W);
    double mean = coprime_part(classes, p) / double(p - 1);
    std::vector<DiscrepancyRecord> out;
    for (i64 a : as) {
        if (gcd(a, p) != 1) throw NotInvertible(mod(a, p), p, gcd(a, p));
        double d = classes[static_cast<std::size_t>(mod(a, p))] - mean;
        out.push_back({X, p, mod(a, p), 0.0, d, std::abs(d) * double(p) / X, W.tag()});
    }
    return out;
}

DiscrepancyRecord delta_discrepancy(double X, i64 p, i64 a, const SmoothWeight& W) {
    return delta_discrepancies(X, p, {a}, W).front();
}

i64 heathbrown_A(i64 q, i64 a) {
    if (q < 1) throw std::invalid_argument("modulus must be >= 1");
    i64 s = 0;
    for (i64 d : factorize(gcd(q, a)).divisors())
        for (i64 dl : factorize(q / d).divisors()) s += d * dl * mobius(q / (d * dl));
    return s;
}

double heathbrown_B(i64 q, i64 a) {
    if (q < 1) throw std::invalid_argument("modulus must be >= 1");
    KahanSum<double> s;
    for (i64 d : factorize(gcd(q, a)).divisors())
        for (i64 dl : factorize(q / d).divisors()) {
            int mu = mobius(q / (d * dl));
            if (mu != 0 && dl > 1) s += double(d * dl * mu) * std::log(double(dl));
        }
    return s.value();
}

const char* to_string(MainTermVariant v) {
    switch (v) {
        case MainTermVariant::heath_brown: return "heath-brown";
        case MainTermVariant::selberg_linear: return "selberg-linear";
        case MainTermVariant::selberg_squared: return "selberg-squared";
    }
    return "?";
}

MainTermVariant parse_main_term_variant(const std::string& tag) {
    for (auto v : {MainTermVariant::heath_brown, MainTermVariant::selberg_linear, MainTermVariant::selberg_squared})
        if (tag == to_string(v)) return v;
    throw std::invalid_argument("unknown main-term variant: " + tag);
}

double main_term(MainTermVariant v, double X, i64 q, i64 a) {
    if (q < 1) throw std::invalid_argument("modulus must be >= 1");
    const double qq = double(q) * double(q);
    if (v == MainTermVariant::heath_brown)
        return X / qq *
               (double(heathbrown_A(q, a)) * (std::log(X / qq) + 2.0 * kEulerGamma - 1.0) + 2.0 * heathbrown_B(q, a));
    if (gcd(a, q) != 1) throw NotInvertible(mod(a, q), q, gcd(a, q));
    double c = std::log(X) + 2.0 * kEulerGamma;
    for (i64 p : factorize(q).prime_factors()) c += 2.0 * std::log(double(p)) / double(p - 1);
    double f = X * double(euler_phi(q)) / qq;
    return v == MainTermVariant::selberg_squared ? f * c * c : f * c;
}

i64 sharp_ap_sum(i64 X, i64 q, i64 a) {
    if (q < 1) throw std::invalid_argument("modulus must be >= 1");
    if (X < 1) return 0;
    const i64 chunk = i64{1} << 22;
    const i64 r = mod(a, q);
    i64 s = 0;
    for (i64 lo = 1; lo <= X; lo += chunk) {
        i64 hi = std::min(X, lo + chunk - 1);
        auto t = kernels::tau_segment_omp(lo, hi);
        i64 first = lo + mod(r - lo, q);
        for (i64 n = first; n <= hi; n += q) s += t[static_cast<std::size_t>(n - lo)];
    }
    return s;
}

Adjudication adjudicate_main_term(i64 X, const std::vector<i64>& qs, double eps) {
    Adjudication adj;
    adj.question = "main-term";
    adj.tolerance = std::pow(double(X), 0.5 + eps);
    const MainTermVariant vs[] = {MainTermVariant::heath_brown, MainTermVariant::selberg_linear,
                                  MainTermVariant::selberg_squared};
    const char* formulas[] = {"X q^-2 (A(q,a)(log(X/q^2) + 2 gamma - 1) + 2 B(q,a))",
                              "X phi(q) q^-2 (log X + 2 gamma + 2 sum log p/(p-1))",
                              "X phi(q) q^-2 (log X + 2 gamma + 2 sum log p/(p-1))^2"};
    for (int i = 0; i < 3; ++i) adj.candidates.push_back({to_string(vs[i]), formulas[i], 0.0, false});
    for (i64 q : qs)
        for (i64 a : units(q)) {
            ++adj.cases;
            double sharp = double(sharp_ap_sum(X, q, a));
            for (int i = 0; i < 3; ++i)
                adj.candidates[i].max_abs_diff =
                    std::max(adj.candidates[i].max_abs_diff, std::abs(sharp - main_term(vs[i], double(X), q, a)));
        }
    for (auto& c : adj.candidates) c.matches = c.max_abs_diff < adj.tolerance;
    return adj;
}

LevelFitResult level_fit(double theta, const std::vector<double>& X_grid, const SmoothWeight& W,
                         std::size_t samples_per_X, std::uint64_t seed, std::size_t primes_per_X) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0, 1)");
    for (std::size_t i = 1; i < X_grid.size(); ++i)
        if (!(X_grid[i] > X_grid[i - 1])) throw std::invalid_argument("X grid must be increasing");
    LevelFitResult res;
    res.theta = theta;
    std::vector<double> xs, ys;
    for (double X : X_grid) {
        const double target = std::pow(X, theta);
        i64 lo = std::max<i64>(3, static_cast<i64>(std::ceil(target / std::sqrt(2.0))));
        i64 hi = std::min(static_cast<i64>(std::floor(target * std::sqrt(2.0))), static_cast<i64>(X / 10.0));
        std::vector<i64> cands = hi >= lo ? primes_in(lo, hi) : std::vector<i64>{};
        if (cands.empty()) {
            res.warnings.push_back("no valid primes near X^theta for X = " + std::to_string(X));
            continue;
        }
        const double lt = std::log(target);
        std::stable_sort(cands.begin(), cands.end(), [&](i64 a, i64 b) {
            return std::abs(std::log(double(a)) - lt) < std::abs(std::log(double(b)) - lt);
        });
        if (cands.size() > primes_per_X) cands.resize(primes_per_X);
        std::sort(cands.begin(), cands.end());
        auto terms = smooth_terms(X, W);
        double worst_scaled = 0.0;
        for (i64 p : cands) {
            std::vector<i64> as = units(p);
            if (p > 997) {
                as = seeded_sample(as, samples_per_X, mix_seed(mix_seed(seed, std::bit_cast<std::uint64_t>(X)), p));
                std::sort(as.begin(), as.end());
            }
            auto classes = kernels::residue_sums_omp(terms.w, terms.lo, p);
            double mean = coprime_part(classes, p) / double(p - 1);
            double worst = 0.0;
            for (i64 a : as) {
                double d = classes[static_cast<std::size_t>(a)] - mean;
                res.records.push_back({X, p, a, theta, d, std::abs(d) * double(p) / X, W.tag()});
                worst = std::max(worst, std::abs(d));
            }
            worst_scaled = std::max(worst_scaled, worst * double(p));
        }
        xs.push_back(std::log(X));
        ys.push_back(std::log(worst_scaled));
    }
    if (xs.size() >= 2) {
        res.fit = least_squares(xs, ys);
        res.has_fit = true;
    } else {
        res.warnings.push_back("fewer than two grid points with valid primes; no fit");
    }
    return res;
}

TruncationSplit truncation_split_check(double X, i64 p, i64 a, const SmoothWeight& W, double delta) {
    PrimeModulus pm(p);
    if (gcd(a, p) != 1) throw NotInvertible(mod(a, p), p, gcd(a, p));
    if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("delta must lie in (0, 1/2)");
    TruncationSplit r;
    r.X = X;
    r.p = p;
    r.a = mod(a, p);
    r.delta = delta;
    r.N1 = std::pow(double(p), 0.5 - delta);
    r.in_regime = double(p) >= std::pow(X, 2.0 / 3.0 - delta);
    r.n1_lower_bound = r.N1 >= std::pow(X, 1.0 / 3.0 - 2.0 * delta);

    // F(t) on s = c + it; F(-t) = conj F(t)
    const double c = 1.05, h = 0.02, T = 1000.0;
    const std::size_t n = static_cast<std::size_t>(T / h);
    MellinLine Wl(W, 1.0 - c, h, n);
    std::vector<Complex> F(n + 1);
    double peak = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        Complex s(c, h * double(k));
        Complex lg = log_gamma(0.5 * s) - log_gamma(0.5 * (1.0 - s));
        F[k] = std::conj(Wl[k]) * std::exp(2.0 * lg + (1.0 - 2.0 * s) * std::log(kPi));
        peak = std::max(peak, std::abs(F[k]));
    }
    std::size_t used = n;
    while (used > 1 && std::abs(F[used]) < 1e-17 * peak) --used;

    const double ratio = X / (double(p) * double(p));
    auto K = kloosterman_row(p);
    auto tau = kernels::tau_segment_serial(1, p - 1);
    const double kappa = 0.5 * double(p - 2) / double(p - 1);
    KahanSum<Complex> head, tail;
    for (i64 m = 1; m < p; ++m) {
        double L = std::log(double(m) * ratio);
        Complex step = std::polar(1.0, -h * L), ph(1.0, 0.0);
        KahanSum<double> acc;
        for (std::size_t k = 1; k <= used; ++k) {
            ph = (k % 64 == 0) ? std::polar(1.0, -h * double(k) * L) : ph * step;
            acc += (F[k] * ph).real();
        }
        double M = ratio * std::exp(-c * L) * h / (2.0 * kPi) * (F[0].real() + 2.0 * acc.value());
        Complex term = kappa * double(tau[m - 1]) * K[static_cast<std::size_t>(mulmod(a, m, p))] * M;
        (double(m) <= r.N1 ? head : tail) += term;
    }
    r.head = head.value();
    r.tail = tail.value();
    r.head_bound = ratio * r.N1 * std::sqrt(double(p)) * std::log(r.N1);
    r.head_ratio = r.head_bound > 0.0 ? std::abs(r.head) / r.head_bound : 0.0;
    r.tail_heuristic = std::pow(double(p), 0.25 + 2.0 * delta);
    return r;
}

}  // namespace ntw
