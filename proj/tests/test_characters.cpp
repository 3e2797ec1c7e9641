#include "doctest.h"
#include "oracles.hpp"
#include "tau2/characters.hpp"

using namespace ntw;

namespace {
bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }
std::vector<i64> small_primes(i64 hi) {
    std::vector<i64> out;
    for (i64 p = 2; p <= hi; ++p)
        if (oracle::prime(p)) out.push_back(p);
    return out;
}
}  // namespace

TEST_CASE("character values") {
    auto G = CharacterGroup::make(7);
    CHECK(G->generator() == 3);
    auto chi0 = G->character(0);
    for (i64 n = 1; n < 7; ++n) CHECK(chi0(n) == Complex(1, 0));
    for (auto& chi : G->all()) {
        CHECK(chi(14) == Complex(0, 0));
        CHECK(close(chi(3), oracle::e(double(chi.index()), 6.0), 1e-14));
        CHECK(close(chi(-1), Complex(chi.parity() ? -1.0 : 1.0, 0), 1e-14));
    }
    CHECK(G->primitive().size() == 5);
    auto G2 = CharacterGroup::make(2);
    CHECK(G2->all().size() == 1);
    CHECK(G2->primitive().empty());
}

TEST_CASE("characters are completely multiplicative") {
    for (i64 p : small_primes(31)) {
        auto G = CharacterGroup::make(p);
        for (auto& chi : G->all())
            for (i64 m = 0; m < 2 * p; ++m)
                for (i64 n = 0; n < p; ++n) CHECK(close(chi(m * n), chi(m) * chi(n), 1e-12));
    }
}

TEST_CASE("full orthogonality") {
    for (i64 p : small_primes(31)) {
        auto G = CharacterGroup::make(p);
        for (i64 a = 1; a < p; ++a)
            for (i64 n = 1; n < p; ++n) {
                Complex s = 0;
                for (auto& chi : G->all()) s += chi(a) * std::conj(chi(n));
                CHECK(close(s / double(p - 1), Complex(a == n ? 1.0 : 0.0, 0), 1e-12));
            }
    }
}

TEST_CASE("gauss sums") {
    for (i64 p : small_primes(97)) {
        auto G = CharacterGroup::make(p);
        CHECK(close(gauss_sum(G->character(0)), Complex(-1, 0), 1e-10));
        for (auto& chi : G->primitive()) CHECK(std::abs(std::norm(gauss_sum(chi)) - double(p)) < 1e-8 * p);
    }
    // the quadratic character mod 5 is chi_2 and its Gauss sum is sqrt 5
    auto G5 = CharacterGroup::make(5);
    CHECK(close(gauss_sum(G5->character(2)), Complex(std::sqrt(5.0), 0), 1e-12));
}

TEST_CASE("orthogonality relations") {
    PrimeModulus p7(7), p11(11);
    CHECK(close(orthogonality_star(ResidueClass(1, 7), ResidueClass(1, 7), p7), Complex(5, 0), 1e-12));
    CHECK(close(orthogonality_star(ResidueClass(1, 7), ResidueClass(2, 7), p7), Complex(-1, 0), 1e-12));
    CHECK(close(orthogonality_odd(ResidueClass(3, 11), ResidueClass(8, 11), p11), Complex(-5, 0), 1e-12));
    CHECK(close(orthogonality_odd(ResidueClass(3, 11), ResidueClass(4, 11), p11), Complex(0, 0), 1e-12));
    // the even sum at A = B counts the (p-3)/2 even non-principal characters
    CHECK(close(orthogonality_even(ResidueClass(3, 11), ResidueClass(3, 11), p11), Complex(4, 0), 1e-12));
    CHECK(orthogonality_even_printed(3, 3, 11) == 4.5);

    for (i64 p : small_primes(97)) {
        PrimeModulus pm(p);
        for (i64 A = 1; A < p; ++A)
            for (i64 B = 1; B < p; ++B) {
                ResidueClass a(A, p), b(B, p);
                Complex st = orthogonality_star(a, b, pm), ev = orthogonality_even(a, b, pm),
                        od = orthogonality_odd(a, b, pm);
                CHECK(close(st, Complex(orthogonality_star_closed(A, B, p), 0), 1e-9 * p));
                CHECK(close(od, Complex(orthogonality_odd_closed(A, B, p), 0), 1e-9 * p));
                CHECK(close(ev, Complex(orthogonality_even_corrected(A, B, p), 0), 1e-9 * p));
                CHECK(close(st, ev + od, 1e-10));
            }
    }
}

TEST_CASE("gauss weighted sums partition by parity") {
    for (i64 p : {5, 7, 13}) {
        PrimeModulus pm(p);
        auto G = CharacterGroup::make(p);
        for (int k = 1; k <= 3; ++k)
            for (i64 c = 1; c < p; ++c) {
                Complex all = 0;
                for (auto& chi : G->primitive()) all += chi(c) * std::pow(std::conj(gauss_sum(chi)), k);
                Complex ev = gauss_weighted_sum(Parity::even, k, ResidueClass(c, p), pm);
                Complex od = gauss_weighted_sum(Parity::odd, k, ResidueClass(c, p), pm);
                CHECK(close(ev + od, all, 1e-10));
            }
    }
    CHECK_THROWS(gauss_weighted_sum(Parity::even, 2, ResidueClass(0, 5), PrimeModulus(5)));
    CHECK(gauss_weighted_sum(Parity::even, 2, ResidueClass(1, 3), PrimeModulus(3)) == Complex(0, 0));
}

TEST_CASE("twisted gauss sums partition by parity") {
    for (i64 p : {7, 11}) {
        PrimeModulus pm(p);
        auto G = CharacterGroup::make(p);
        for (i64 n = 1; n < p; ++n)
            for (i64 am = 1; am < p; ++am) {
                Complex all = 0;
                for (auto& chi : G->primitive()) all += chi(n) * std::conj(chi(am)) * gauss_sum(chi);
                Complex ev = twisted_gauss_sum(Parity::even, ResidueClass(n, p), ResidueClass(am, p), pm);
                Complex od = twisted_gauss_sum(Parity::odd, ResidueClass(n, p), ResidueClass(am, p), pm);
                CHECK(close(ev + od, all, 1e-10));
            }
    }
    // n = am = 1, p = 7: the even sum is 3 cos(2 pi/7) * 2 + 1
    Complex ev = twisted_gauss_sum(Parity::even, ResidueClass(1, 7), ResidueClass(1, 7), PrimeModulus(7));
    CHECK(close(ev, Complex(6 * std::cos(2 * M_PI / 7) + 1, 0), 1e-12));
    CHECK(std::abs(ev - Complex(0.5 * 3 * std::cos(2 * M_PI / 7), 0.5 * 3 * std::sin(2 * M_PI / 7)) + 1.0) > 0.1);
}

TEST_CASE("closed-form adjudication selects one candidate per question") {
    for (Parity par : {Parity::even, Parity::odd}) {
        auto g = adjudicate_gauss_power(par, {2, 3}, 31);
        CHECK(g.match_count() == 1);
        CHECK(g.selected() == (par == Parity::even ? "even-symmetric" : "odd-antisymmetric"));
        auto l = adjudicate_twisted_gauss(par, 31);
        CHECK(l.match_count() == 1);
        CHECK(l.selected() == (par == Parity::even ? "even-symmetric" : "odd-antisymmetric"));
    }
    CHECK_FALSE(gauss_power_printed_mismatches({2}, 7, 1e-8).empty());
    CHECK_FALSE(twisted_gauss_printed_mismatches(7, 1e-8).empty());
}
