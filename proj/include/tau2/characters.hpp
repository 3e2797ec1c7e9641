#pragma once

#include <memory>
#include <vector>

#include "tau2/arith.hpp"
#include "tau2/exp_sums.hpp"
#include "tau2/report.hpp"

namespace ntw {

enum class Parity { even = 0, odd = 1 };

class DirichletCharacter;

// Characters mod a prime p, indexed by the exponent j of the primitive root.
class CharacterGroup : public std::enable_shared_from_this<CharacterGroup> {
public:
    static std::shared_ptr<const CharacterGroup> make(i64 p);

    i64 p() const { return p_; }
    i64 generator() const { return g_; }
    i64 order() const { return p_ - 1; }
    i64 dlog(i64 n) const;    // -1 when p | n
    const RootsOfUnityTable& additive() const { return add_; }

    Complex value(i64 j, i64 n) const {
        i64 t = dlog_[static_cast<std::size_t>(mod(n, p_))];
        if (t < 0) return {0.0, 0.0};
        return mult_[(j * t) % (p_ - 1)];
    }

    DirichletCharacter character(i64 j) const;
    std::vector<DirichletCharacter> all() const;
    std::vector<DirichletCharacter> primitive() const;

    explicit CharacterGroup(const PrimeModulus& p);

private:
    i64 p_, g_;
    std::vector<i64> dlog_;
    RootsOfUnityTable mult_;
    RootsOfUnityTable add_;
};

class DirichletCharacter {
public:
    DirichletCharacter(std::shared_ptr<const CharacterGroup> group, i64 j);

    i64 modulus() const { return group_->p(); }
    i64 index() const { return j_; }
    int parity() const { return static_cast<int>(j_ % 2); }
    bool is_principal() const { return j_ == 0; }
    bool is_even() const { return j_ % 2 == 0; }
    const CharacterGroup& group() const { return *group_; }
    DirichletCharacter conj() const;

    Complex operator()(i64 n) const { return group_->value(j_, n); }

private:
    std::shared_ptr<const CharacterGroup> group_;
    i64 j_;
};

Complex char_value(const DirichletCharacter& chi, i64 n);
Complex gauss_sum(const DirichletCharacter& chi);

Complex orthogonality_star(const ResidueClass& A, const ResidueClass& B, const PrimeModulus& p);
Complex orthogonality_even(const ResidueClass& A, const ResidueClass& B, const PrimeModulus& p);
Complex orthogonality_odd(const ResidueClass& A, const ResidueClass& B, const PrimeModulus& p);

// case values exactly as printed
double orthogonality_star_closed(i64 A, i64 B, i64 p);
double orthogonality_even_printed(i64 A, i64 B, i64 p);
double orthogonality_odd_closed(i64 A, i64 B, i64 p);
// (p-3)/2 when A = +-B, -1 otherwise
double orthogonality_even_corrected(i64 A, i64 B, i64 p);

// sum over primitive chi of the given parity of chi(C) conj(tau(chi))^k
Complex gauss_weighted_sum(Parity parity, int k, const ResidueClass& C, const PrimeModulus& p);
// sum over primitive chi of the given parity of chi(n) conj(chi)(am) tau(chi)
Complex twisted_gauss_sum(Parity parity, const ResidueClass& n, const ResidueClass& am, const PrimeModulus& p);

struct GaussPowerForm {
    const char* id;
    const char* formula;
    Parity parity;
    // K(C) and K(-C) are the hyper-Kloosterman sums of order k
    Complex (*eval)(int k, i64 p, Complex kc, Complex kmc);
};
const std::vector<GaussPowerForm>& gauss_power_forms();

struct TwistedGaussForm {
    const char* id;
    const char* formula;
    Parity parity;
    Complex (*eval)(i64 p, i64 u);    // u = am * n^{-1} mod p
};
const std::vector<TwistedGaussForm>& twisted_gauss_forms();

Adjudication adjudicate_gauss_power(Parity parity, const std::vector<int>& ks, i64 p_max, double tol = 1e-8);
Adjudication adjudicate_twisted_gauss(Parity parity, i64 p_max, double tol = 1e-8);

// mismatches of the printed forms against brute force
std::vector<IdentityMismatch> gauss_power_printed_mismatches(const std::vector<int>& ks, i64 p_max, double tol);
std::vector<IdentityMismatch> twisted_gauss_printed_mismatches(i64 p_max, double tol);

}  // namespace ntw
