#include "doctest.h"
#include "oracles.hpp"
#include "tau2/divisor_ap.hpp"
#include "tau2/special.hpp"

using namespace ntw;

namespace {

double bump(double x) { return (x > 1 && x < 2) ? std::exp(-1.0 / ((x - 1) * (2 - x))) : 0.0; }

// composite Simpson for int_1^2 W(x) x^{s-1} dx
Complex mellin_oracle(Complex s) {
    const int n = 20000;
    const double h = 1.0 / n;
    Complex acc = 0;
    for (int i = 1; i < n; ++i) {
        double x = 1 + i * h;
        acc += (i % 2 ? 4.0 : 2.0) * bump(x) * std::exp((s - 1.0) * std::log(x));
    }
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("smooth sums against brute force") {
    const double X = 3000;
    auto tau = oracle::tau_table(6000);
    SmoothWeight W;
    for (i64 q : {1, 2, 7, 30}) {
        auto R = smooth_residue_sums(X, q, W);
        REQUIRE(R.size() == std::size_t(q));
        for (i64 a = 0; a < q; ++a) {
            double acc = 0;
            for (i64 n = 3001; n < 6000; ++n)
                if (n % q == a) acc += tau[n] * bump(n / X);
            CHECK(R[a] == doctest::Approx(acc).epsilon(1e-12));
            if (std::gcd(a, q) == 1) CHECK(ap_sum_smooth(X, q, a, W) == doctest::Approx(acc).epsilon(1e-12));
        }
    }
}

TEST_CASE("partition identities and linearity in the weight") {
    oracle::Gen g(41);
    for (int it = 0; it < 8; ++it) {
        double X = g.real(1e3, 5e4);
        i64 p = 0;
        while (!oracle::prime(p)) p = g.integer(3, 200);
        SmoothWeight W, W3(3.0);
        double all = 0, cop = 0;
        std::vector<i64> as;
        auto R = smooth_residue_sums(X, p, W);
        for (i64 a = 0; a < p; ++a) {
            all += R[a];
            if (a) {
                CHECK(ap_sum_smooth(X, p, a, W) == R[a]);
                cop += R[a];
                as.push_back(a);
            }
        }
        CHECK(all == doctest::Approx(full_sum_smooth(X, W)).epsilon(1e-12));
        CHECK(cop == doctest::Approx(coprime_sum_smooth(X, p, W)).epsilon(1e-12));
        auto recs = delta_discrepancies(X, p, as, W);
        double sum = 0, scale = 0;
        for (auto& r : recs) {
            sum += r.delta;
            scale += std::abs(r.delta);
            CHECK(r.normalized == doctest::Approx(std::abs(r.delta) * double(p) / X));
            CHECK(r.weight_tag == "bump");
        }
        CHECK(std::abs(sum) <= 1e-9 * std::max(1.0, scale));
        auto r3 = delta_discrepancy(X, p, as[0], W3);
        CHECK(r3.delta == doctest::Approx(3.0 * recs[0].delta).epsilon(1e-10));
        CHECK(r3.weight_tag != "bump");
    }
}

TEST_CASE("main-term coefficients") {
    for (i64 q = 1; q <= 500; ++q)
        for (i64 a : {1, 2, 3, 7}) {
            if (std::gcd(a, q) != 1) continue;
            CHECK(heathbrown_A(q, a) == oracle::phi(q));
        }
    CHECK(heathbrown_A(1, 5) == 1);
    CHECK(heathbrown_B(1, 5) == 0.0);
    // A(q, a) counts solutions of x y = a (mod q)
    for (i64 q = 1; q <= 40; ++q)
        for (i64 a = 0; a < q; ++a) {
            i64 count = 0;
            for (i64 x = 0; x < q; ++x)
                for (i64 y = 0; y < q; ++y) count += (x * y % q == a);
            CHECK(heathbrown_A(q, a) == count);
        }
    CHECK(heathbrown_A(4, 2) == 4);
    CHECK_THROWS_AS(ap_sum_smooth(1e3, 6, 4, SmoothWeight()), NotInvertible);
}

TEST_CASE("sharp sums and the main term") {
    CHECK(sharp_ap_sum(100, 1, 0) == 482);
    auto tau = oracle::tau_table(20000);
    for (i64 q : {1, 3, 10})
        for (i64 a : {0, 1, 2}) {
            i64 s = 0;
            for (i64 n = 1; n <= 20000; ++n) s += (n % q == a % q) * tau[n];
            CHECK(sharp_ap_sum(20000, q, a) == s);
        }
    const double g = 0.57721566490153286;
    for (double X : {1e4, 1e6, 1e7}) {
        double mt = main_term(MainTermVariant::heath_brown, X, 1, 0);
        CHECK(mt == doctest::Approx(X * (std::log(X) + 2 * g - 1)).epsilon(1e-12));
        CHECK(std::abs(double(sharp_ap_sum(i64(X), 1, 0)) - mt) < std::pow(X, 0.4));
    }
    CHECK(main_term(MainTermVariant::selberg_linear, 1e4, 5, 2) - main_term(MainTermVariant::heath_brown, 1e4, 5, 2) ==
          doctest::Approx(1e4 * 4.0 / 25.0));
    CHECK(parse_main_term_variant("selberg-squared") == MainTermVariant::selberg_squared);
    CHECK_THROWS_AS(parse_main_term_variant("nope"), std::invalid_argument);
    auto adj = adjudicate_main_term(100000, {1, 3, 5, 7});
    CHECK(adj.selected() == "heath-brown");
}

TEST_CASE("mellin transform of the bump") {
    SmoothWeight W;
    for (double sigma : {-1.0, 0.0, 1.0}) {
        Complex base = W.mellin(sigma);
        CHECK(std::abs(base - mellin_oracle(sigma)) < 1e-12);
        Complex m10 = W.mellin(Complex(sigma, 10.0));
        CHECK(std::abs(m10 - mellin_oracle(Complex(sigma, 10.0))) < 1e-12);
        double r10 = std::abs(m10) / std::abs(base);
        CHECK(r10 > 0.6);
        CHECK(r10 < 0.65);
        CHECK(std::abs(W.mellin(Complex(sigma, 100.0))) / std::abs(base) < 1e-3);
    }
    MellinLine L(W, 0.5, 0.25, 40);
    REQUIRE(L.size() == 41);
    for (std::size_t k = 0; k < L.size(); k += 7) CHECK(std::abs(L[k] - W.mellin(Complex(0.5, 0.25 * k))) < 1e-12);
}

TEST_CASE("level fit") {
    SmoothWeight W;
    auto r = level_fit(0.5, {1e4, 3e4, 1e5, 3e5, 1e6}, W, 50, 20240611);
    REQUIRE(r.has_fit);
    CHECK(r.fit.n_points == 5);
    CHECK(r.fit.slope <= 0.98);
    CHECK(r.fit.slope_stderr < 0.05);
    for (auto& d : r.records) {
        CHECK(d.p >= 3);
        CHECK(d.X / double(d.p) >= 10);
        CHECK(oracle::prime(d.p));
    }
    auto again = level_fit(0.5, {1e4, 3e4, 1e5, 3e5, 1e6}, W, 50, 20240611);
    CHECK(again.fit.slope == r.fit.slope);
    auto none = level_fit(0.99, {1e4, 1e5}, W, 10, 1);
    CHECK(!none.has_fit);
    CHECK(!none.warnings.empty());
}

TEST_CASE("truncation split at N1 = p^(1/2 - delta)") {
    SmoothWeight W;
    auto t = truncation_split_check(1e6, 8009, 5, W, 0.05);
    CHECK(t.N1 == doctest::Approx(std::pow(8009.0, 0.45)));
    CHECK(t.in_regime);
    CHECK(t.n1_lower_bound);
    CHECK(t.head_ratio <= 1.0);
    CHECK(std::abs(t.tail) <= t.tail_heuristic);
    CHECK(t.head_ratio == doctest::Approx(std::abs(t.head) / t.head_bound));
}
