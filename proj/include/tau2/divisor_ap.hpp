#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tau2/arith.hpp"
#include "tau2/fit.hpp"
#include "tau2/report.hpp"
#include "tau2/smooth_weight.hpp"

namespace ntw {

// sum of tau(n) W(n/X) over X < n < 2X with n = a (mod q)
double ap_sum_smooth(double X, i64 q, i64 a, const SmoothWeight& W);
// the same over n coprime to q
double coprime_sum_smooth(double X, i64 q, const SmoothWeight& W);
// the same over all n
double full_sum_smooth(double X, const SmoothWeight& W);

// residue-class sums out[r] = sum over n = r (mod q) of tau(n) W(n/X), one sieve pass
std::vector<double> smooth_residue_sums(double X, i64 q, const SmoothWeight& W);

struct DiscrepancyRecord {
    double X = 0.0;
    i64 p = 0;
    i64 a = 0;
    double theta = 0.0;
    double delta = 0.0;         // ap sum minus coprime sum / (p - 1)
    double normalized = 0.0;    // |delta| p / X
    std::string weight_tag;
};

DiscrepancyRecord delta_discrepancy(double X, i64 p, i64 a, const SmoothWeight& W);
// records for each a in as, from one sieve pass
std::vector<DiscrepancyRecord> delta_discrepancies(double X, i64 p, const std::vector<i64>& as,
                                                   const SmoothWeight& W);

i64 heathbrown_A(i64 q, i64 a);
double heathbrown_B(i64 q, i64 a);

enum class MainTermVariant { heath_brown, selberg_linear, selberg_squared };
const char* to_string(MainTermVariant v);
MainTermVariant parse_main_term_variant(const std::string& tag);

// heath-brown: X q^{-2} (A (log(X/q^2) + 2 gamma - 1) + 2 B)
// selberg-squared: X phi(q) q^{-2} (log X + 2 gamma + 2 sum_{p|q} log p/(p-1))^2
// selberg-linear: the same without the square
double main_term(MainTermVariant v, double X, i64 q, i64 a);

// sum of tau(n) over 1 <= n <= X with n = a (mod q)
i64 sharp_ap_sum(i64 X, i64 q, i64 a);

// every variant against sharp_ap_sum at the given (X, q, a) cells; a candidate
// matches when its worst error stays below X^{1/2 + eps}
Adjudication adjudicate_main_term(i64 X, const std::vector<i64>& qs, double eps = 0.1);

struct LevelFitResult {
    double theta = 0.0;
    bool has_fit = false;
    FitResult fit;
    std::vector<DiscrepancyRecord> records;    // every (X, p, a) evaluated
    std::vector<std::string> warnings;
};

// For each X: the primes_per_X primes nearest X^theta among primes p >= 3 in
// [X^theta/sqrt 2, X^theta sqrt 2] with X/p >= 10; all units when p <= 997, else a
// seeded sample. One point (log X, log max |delta| p) per X, the max running over
// the chosen primes and residues.
LevelFitResult level_fit(double theta, const std::vector<double>& X_grid, const SmoothWeight& W,
                         std::size_t samples_per_X, std::uint64_t seed, std::size_t primes_per_X = 3);

struct TruncationSplit {
    double X = 0.0;
    i64 p = 0;
    i64 a = 0;
    double delta = 0.0;
    double N1 = 0.0;
    Complex head;                  // n <= N1
    Complex tail;                  // N1 < n < p
    double head_bound = 0.0;       // (X N1 / p^2) p^{1/2} log N1
    double head_ratio = 0.0;
    double tail_heuristic = 0.0;   // p^{1/4 + 2 delta}
    bool in_regime = false;        // p >= X^{2/3 - delta}
    bool n1_lower_bound = false;   // N1 >= X^{1/3 - 2 delta}
};

// Splits (1/2)(p-2)/(p-1) sum_{n<p} tau(n) S(1, a n; p) M(n) at N1 = p^{1/2 - delta} with
// M(n) = (1/2 pi i) int_(c) W^(1-s) (X/p^2)^{1-s} (pi^{1/2-s} Gamma(s/2)/Gamma((1-s)/2))^2 n^{-s} ds.
TruncationSplit truncation_split_check(double X, i64 p, i64 a, const SmoothWeight& W, double delta = 0.05);

}  // namespace ntw
