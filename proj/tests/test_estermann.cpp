#include "doctest.h"
#include "oracles.hpp"
#include "tau2/estermann.hpp"
#include "tau2/sieve.hpp"

using namespace ntw;

namespace {

// sum of tau(n) e(A n / q) n^{-s}, or with S(1, A n; q) in place of the additive character
struct BruteSeries {
    std::vector<int> tau;
    explicit BruteSeries(i64 N) : tau(oracle::tau_table(N)) {}

    Complex estermann(Complex s, i64 q, i64 A) const {
        Complex acc = 0;
        for (i64 n = i64(tau.size()) - 1; n >= 1; --n)
            acc += double(tau[n]) * oracle::e(double(A * n % q), double(q)) * std::exp(-s * std::log(double(n)));
        return acc;
    }
    Complex d2(Complex s, i64 q, i64 A) const {
        std::vector<Complex> K(q);
        for (i64 r = 0; r < q; ++r) K[r] = oracle::kloos(1, r, q);
        Complex acc = 0;
        for (i64 n = i64(tau.size()) - 1; n >= 1; --n)
            acc += double(tau[n]) * K[A * n % q] * std::exp(-s * std::log(double(n)));
        return acc;
    }
};

const BruteSeries& brute() {
    static BruteSeries b(200000);
    return b;
}

}  // namespace

TEST_CASE("continuation agrees with the brute-force series at Re s = 3") {
    // tail of the truncated series is below 2e-9 at N = 2e5
    for (i64 q : {1, 3, 4, 7, 12}) {
        for (i64 A : units(q)) {
            Complex s(3.0, oracle::Gen(q * 100 + A).real(-4, 4));
            auto e = estermann_E2(s, q, A, SeriesMethod::hurwitz_continuation);
            CHECK(std::abs(e.value - brute().estermann(s, q, A)) < 1e-8);
            auto d = d2_value(s, q, A);
            CHECK(std::abs(d.value - brute().d2(s, q, A)) < 1e-8 * double(q));
        }
    }
}

TEST_CASE("direct and continuation routes agree for Re s > 1") {
    SmoothedSeries S(Complex(1.5, 0.0));
    for (i64 q = 1; q <= 12; ++q) {
        auto d = dual_evaluation_check(S, q);
        CHECK(d.units == units(q));
        CHECK(d.max_e2_diff < 1e-8);
        CHECK(d.max_d2_diff < 1e-8);
    }
    auto e = estermann_E2(Complex(1.2, 3.0), 5, 2);
    CHECK(e.method == SeriesMethod::direct_series);
    CHECK(e.error_estimate < 1e-9);
    auto c = estermann_E2(Complex(1.2, 3.0), 5, 2, SeriesMethod::hurwitz_continuation);
    CHECK(std::abs(e.value - c.value) < 1e-8);
    CHECK(estermann_E2(Complex(0.5, 3.0), 5, 2).method == SeriesMethod::hurwitz_continuation);
    CHECK_THROWS_AS(estermann_E2(Complex(1.5, 0.0), 211, 1, SeriesMethod::direct_series), std::domain_error);
    CHECK(estermann_E2(Complex(1.5, 0.0), 211, 1).method == SeriesMethod::hurwitz_continuation);
}

TEST_CASE("truncated partial sums stay within the tail bound") {
    for (i64 q : {5, 9}) {
        for (i64 A : {1, 2}) {
            Complex s(2.0, 1.0);
            Complex full = estermann_E2(s, q, A, SeriesMethod::hurwitz_continuation).value;
            for (i64 N : {10, 100, 1000, 20000}) {
                double err = std::abs(full - estermann_partial_sum(s, q, A, N));
                CHECK(err <= divisor_tail_bound(2.0, double(N)));
            }
        }
    }
    CHECK(estermann_partial_sum(Complex(2.0, 0.0), 5, 1, 0) == Complex(0.0, 0.0));
}

TEST_CASE("double-pole coefficients at s = 1") {
    const double g = 0.57721566490153286;
    for (i64 q : {1, 2, 3, 6, 10, 13}) {
        for (i64 A : units(q)) {
            auto e = estermann_residue_check(q, A);
            CHECK(e.laurent_c2 == doctest::Approx(1.0 / double(q)).epsilon(1e-9));
            CHECK(std::abs(e.laurent_c1 - 2.0 * (g - std::log(double(q))) / double(q)) < 1e-9);
            auto d = d2_residue_check(q, A);
            int mu = oracle::moebius(q);
            CHECK(std::abs(d.laurent_c2 - mu / double(q)) < 1e-9);
            CHECK(std::abs(d.laurent_c1 - 2.0 * mu * (g - std::log(double(q))) / double(q)) < 1e-9);
        }
    }
    auto all = estermann_residue_checks(9);
    REQUIRE(all.size() == 6);
    for (auto& r : all) CHECK(r.residual < 1e-9);
    for (auto& r : d2_residue_checks(4)) CHECK(std::abs(r.laurent_c2) < 1e-9);
}

TEST_CASE("functional equations") {
    oracle::Gen g(21);
    for (int it = 0; it < 40; ++it) {
        i64 q = g.integer(1, 12);
        auto us = units(q);
        i64 A = us[std::size_t(g.integer(0, i64(us.size()) - 1))];
        Complex s(g.real(-1.5, 2.5), g.real(-6, 6));
        if (std::abs(s - 1.0) < 0.1 || std::abs(s) < 0.1) continue;
        CHECK(estermann_fe_check(s, q, A) < 1e-9);
        CHECK(d2_fe_check(s, q, A) < 1e-8);
    }
}

TEST_CASE("gamma factor symmetry") {
    oracle::Gen g(22);
    for (int it = 0; it < 100; ++it) {
        Complex s(g.real(-3, 3), g.real(-5, 5));
        // Gamma(s) Gamma(1 - s) = pi / sin(pi s)
        Complex prod = GFactor::at(s).value * GFactor::at(1.0 - s).value;
        Complex expect = -0.5 / std::sin(M_PI * s);
        CHECK(std::abs(prod - expect) < 1e-10 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("congruence modulus of the dual sums") {
    auto adj = adjudicate_d2_fe_modulus({6, 10}, {Complex(-0.5, 0.3)});
    CHECK(adj.selected() == "divisor");
    CHECK(adj.match_count() == 1);
    CHECK(d2_fe_check(Complex(-0.5, 0.3), 6, 5, CongruenceModulus::full) > 1e-3);
    CHECK(d2_fe_check(Complex(-0.5, 0.3), 7, 3, CongruenceModulus::divisor) < 1e-8);
}

TEST_CASE("character decomposition of the Kloosterman-twisted series") {
    CHECK(d2_char_decomposition_check(Complex(1.5, 0.0), 5, 1, DecompositionForm::printed) > 1.0);
    CHECK(d2_char_decomposition_check(Complex(0.5, 1.0), 7, 3, DecompositionForm::printed) > 0.1);
    for (i64 p : {3, 5, 7, 11})
        for (i64 A = 1; A < p; ++A)
            for (Complex s : {Complex(1.5, 0.0), Complex(0.5, 1.0), Complex(-0.3, 2.0)})
                CHECK(d2_char_decomposition_check(s, p, A, DecompositionForm::corrected) < 1e-9);
}

TEST_CASE("modulus one conventions") {
    auto K = kloosterman_row(1);
    REQUIRE(K.size() == 1);
    CHECK(K[0] == Complex(1.0, 0.0));
    for (Complex s : {Complex(2.0, 0.0), Complex(0.5, 3.0), Complex(-1.5, 1.0)}) {
        Complex z = riemann_zeta(s);
        CHECK(std::abs(estermann_E2(s, 1, 0).value - z * z) < 1e-10 * std::max(1.0, std::abs(z * z)));
        CHECK(std::abs(divisor_class_series(s, 0, 1) - z * z) < 1e-10 * std::max(1.0, std::abs(z * z)));
    }
    CHECK(estermann_E2(Complex(2.0, 0.0), 1, 7).A == 0);
    CHECK_THROWS_AS(estermann_E2(Complex(2.0, 0.0), 6, 2), NotInvertible);
    CHECK_THROWS(estermann_E2(Complex(1.0, 0.0), 6, 1));
}

TEST_CASE("convexity probe rows") {
    auto rows = d2_convexity_probe({11, 23}, {0.5, 1.0}, {0.0, 5.0}, 4, 9);
    // (sigma, t) = (1, 0) is the pole and is skipped
    CHECK(rows.size() == 2 * 3 * 4);
    for (auto& r : rows) {
        CHECK(!(r.sigma == 1.0 && r.t == 0.0));
        CHECK(r.abs_d2 == doctest::Approx(std::abs(d2_value(Complex(r.sigma, r.t), r.p, r.A).value)));
        CHECK(r.convexity_ratio > 0.0);
    }
    auto again = d2_convexity_probe({11, 23}, {0.5, 1.0}, {0.0, 5.0}, 4, 9);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].A == again[i].A);
    CHECK_THROWS_AS(d2_convexity_probe({11}, {1.5}, {0.0}, 2, 1), std::invalid_argument);
}
