#include "tau2/characters.hpp"

#include <cmath>
#include <stdexcept>

namespace ntw {

std::string Adjudication::selected() const {
    std::string id;
    for (auto& c : candidates) {
        if (!c.matches) continue;
        if (!id.empty()) return {};
        id = c.id;
    }
    return id;
}

std::size_t Adjudication::match_count() const {
    std::size_t n = 0;
    for (auto& c : candidates) n += c.matches;
    return n;
}

CharacterGroup::CharacterGroup(const PrimeModulus& pm)
    : p_(pm.value()), g_(primitive_root(pm).value()), mult_(pm.value() - 1 > 0 ? pm.value() - 1 : 1),
      add_(pm.value()) {
    dlog_.assign(static_cast<std::size_t>(p_), -1);
    i64 x = 1;
    for (i64 t = 0; t < p_ - 1; ++t) {
        dlog_[static_cast<std::size_t>(x)] = t;
        x = x * g_ % p_;
    }
}

std::shared_ptr<const CharacterGroup> CharacterGroup::make(i64 p) {
    return std::make_shared<const CharacterGroup>(PrimeModulus(p));
}

i64 CharacterGroup::dlog(i64 n) const { return dlog_[static_cast<std::size_t>(mod(n, p_))]; }

DirichletCharacter CharacterGroup::character(i64 j) const { return DirichletCharacter(shared_from_this(), j); }

std::vector<DirichletCharacter> CharacterGroup::all() const {
    std::vector<DirichletCharacter> out;
    for (i64 j = 0; j < order(); ++j) out.push_back(character(j));
    return out;
}

std::vector<DirichletCharacter> CharacterGroup::primitive() const {
    std::vector<DirichletCharacter> out;
    for (i64 j = 1; j < order(); ++j) out.push_back(character(j));
    return out;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group, i64 j)
    : group_(std::move(group)), j_(j) {
    if (j < 0 || j >= group_->order()) throw std::invalid_argument("character index out of range");
}

DirichletCharacter DirichletCharacter::conj() const { return {group_, (group_->order() - j_) % group_->order()}; }

Complex char_value(const DirichletCharacter& chi, i64 n) { return chi(n); }

Complex gauss_sum(const DirichletCharacter& chi) {
    const auto& G = chi.group();
    KahanSum<Complex> s;
    for (i64 a = 1; a < G.p(); ++a) s += chi(a) * G.additive().at_reduced(a);
    return s.value();
}

namespace {

void require_units(i64 A, i64 B, i64 p) {
    if (mod(A, p) == 0 || mod(B, p) == 0) throw NotInvertible(0, p, p);
}

// sum over primitive characters with index in {j : j % step == rem}
Complex restricted_orth(i64 A, i64 B, i64 p, int step, int rem) {
    require_units(A, B, p);
    auto G = CharacterGroup::make(p);
    // chi(A) conj(chi(B)) = chi(A B^{-1})
    i64 x = mulmod(A, inverse_mod(B, p), p);
    KahanSum<Complex> s;
    for (i64 j = 1; j < G->order(); ++j)
        if (j % step == rem) s += G->value(j, x);
    return s.value();
}

bool pm_equal(i64 A, i64 B, i64 p) { return mod(A - B, p) == 0 || mod(A + B, p) == 0; }

}  // namespace

Complex orthogonality_star(const ResidueClass& A, const ResidueClass& B, const PrimeModulus& p) {
    return restricted_orth(A.value(), B.value(), p.value(), 1, 0);
}
Complex orthogonality_even(const ResidueClass& A, const ResidueClass& B, const PrimeModulus& p) {
    return restricted_orth(A.value(), B.value(), p.value(), 2, 0);
}
Complex orthogonality_odd(const ResidueClass& A, const ResidueClass& B, const PrimeModulus& p) {
    return restricted_orth(A.value(), B.value(), p.value(), 2, 1);
}

double orthogonality_star_closed(i64 A, i64 B, i64 p) { return mod(A - B, p) == 0 ? p - 2.0 : -1.0; }

double orthogonality_even_printed(i64 A, i64 B, i64 p) { return pm_equal(A, B, p) ? 0.5 * (p - 2.0) : -1.0; }

double orthogonality_even_corrected(i64 A, i64 B, i64 p) {
    if (p == 2) return 0.0;
    return pm_equal(A, B, p) ? 0.5 * (p - 3.0) : -1.0; }

double orthogonality_odd_closed(i64 A, i64 B, i64 p) {
    // when p = 2 the two cases coincide and the sum is empty
    if (p == 2) return 0.0;
    if (mod(A - B, p) == 0) return 0.5 * (p - 1.0);
    if (mod(A + B, p) == 0) return 0.5 * (1.0 - p);
    return 0.0;
}

Complex gauss_weighted_sum(Parity parity, int k, const ResidueClass& C, const PrimeModulus& pm) {
    i64 p = pm.value();
    if (C.modulus() != p || C.value() == 0) throw NotInvertible(C.value(), p, p);
    if (k < 1 || k > 3) throw std::invalid_argument("gauss_weighted_sum supports k in {1,2,3}");
    auto G = CharacterGroup::make(p);
    KahanSum<Complex> s;
    for (auto& chi : G->primitive()) {
        if (chi.parity() != static_cast<int>(parity)) continue;
        Complex tb = std::conj(gauss_sum(chi));
        Complex pw = tb;
        for (int i = 1; i < k; ++i) pw *= tb;
        s += chi(C.value()) * pw;
    }
    return s.value();
}

Complex twisted_gauss_sum(Parity parity, const ResidueClass& n, const ResidueClass& am, const PrimeModulus& pm) {
    i64 p = pm.value();
    if (n.value() == 0 || am.value() == 0) throw NotInvertible(0, p, p);
    auto G = CharacterGroup::make(p);
    KahanSum<Complex> s;
    for (auto& chi : G->primitive()) {
        if (chi.parity() != static_cast<int>(parity)) continue;
        s += chi(n.value()) * std::conj(chi(am.value())) * gauss_sum(chi);
    }
    return s.value();
}

namespace {

double sgn_k(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

const std::vector<GaussPowerForm>& gauss_power_forms() {
    static const std::vector<GaussPowerForm> forms = {
        {"even-statement", "(p-2)/2 K(C) + (-1)^(k+1)", Parity::even,
         [](int k, i64 p, Complex kc, Complex) { return 0.5 * (p - 2.0) * kc - sgn_k(k); }},
        {"even-proof", "(p-2)/2 (K(C)+K(-C)) + (-1)^(k+1)", Parity::even,
         [](int k, i64 p, Complex kc, Complex kmc) { return 0.5 * (p - 2.0) * (kc + kmc) - sgn_k(k); }},
        {"even-symmetric", "(p-1)/2 (K(C)+K(-C)) + (-1)^(k+1)", Parity::even,
         [](int k, i64 p, Complex kc, Complex kmc) { return 0.5 * (p - 1.0) * (kc + kmc) - sgn_k(k); }},
        {"odd-statement", "(p-1)/2 (K(C)+K(-C)) + (-1)^k", Parity::odd,
         [](int k, i64 p, Complex kc, Complex kmc) { return 0.5 * (p - 1.0) * (kc + kmc) + sgn_k(k); }},
        {"odd-antisymmetric", "(-1)^k (p-1)/2 (K(C)-K(-C))", Parity::odd,
         [](int k, i64 p, Complex kc, Complex kmc) { return sgn_k(k) * 0.5 * (p - 1.0) * (kc - kmc); }},
    };
    return forms;
}

const std::vector<TwistedGaussForm>& twisted_gauss_forms() {
    static const std::vector<TwistedGaussForm> forms = {
        {"even-statement", "(p-4)/2 e_p(u) - 1", Parity::even,
         [](i64 p, i64 u) { return 0.5 * (p - 4.0) * e_q(u, p) - 1.0; }},
        {"even-proof", "(p-2)/2 e_p(u) - (mu(p) - e_p(u))", Parity::even,
         [](i64 p, i64 u) { return 0.5 * (p - 2.0) * e_q(u, p) + 1.0 + e_q(u, p); }},
        {"even-symmetric", "(p-1)/2 (e_p(u)+e_p(-u)) + 1", Parity::even,
         [](i64 p, i64 u) { return 0.5 * (p - 1.0) * (e_q(u, p) + e_q(-u, p)) + 1.0; }},
        {"odd-statement", "(p-1)/2 e_p(u)", Parity::odd, [](i64 p, i64 u) { return 0.5 * (p - 1.0) * e_q(u, p); }},
        {"odd-antisymmetric", "(p-1)/2 (e_p(u)-e_p(-u))", Parity::odd,
         [](i64 p, i64 u) { return 0.5 * (p - 1.0) * (e_q(u, p) - e_q(-u, p)); }},
    };
    return forms;
}

namespace {

template <class Form>
Adjudication start(const std::string& q, const std::vector<Form>& forms, Parity parity, double tol) {
    Adjudication adj;
    adj.question = q;
    adj.tolerance = tol;
    for (auto& f : forms)
        if (f.parity == parity) adj.candidates.push_back({f.id, f.formula, 0.0, false});
    return adj;
}

template <class Form>
void finish(Adjudication& adj) {
    for (auto& c : adj.candidates) c.matches = c.max_abs_diff < adj.tolerance;
}

}  // namespace

Adjudication adjudicate_gauss_power(Parity parity, const std::vector<int>& ks, i64 p_max, double tol) {
    Adjudication adj = start(parity == Parity::even ? "gauss-power-even" : "gauss-power-odd", gauss_power_forms(), parity, tol);
    for (i64 p : primes_in(3, p_max)) {
        PrimeModulus pm(p);
        for (int k : ks) {
            std::vector<Complex> K(static_cast<std::size_t>(p));
            for (i64 c = 1; c < p; ++c) K[c] = hyper_kloosterman(k, ResidueClass(c, p), pm);
            for (i64 c = 1; c < p; ++c) {
                Complex brute = gauss_weighted_sum(parity, k, ResidueClass(c, p), pm);
                ++adj.cases;
                std::size_t i = 0;
                for (auto& f : gauss_power_forms()) {
                    if (f.parity != parity) continue;
                    double d = std::abs(f.eval(k, p, K[c], K[p - c]) - brute);
                    adj.candidates[i].max_abs_diff = std::max(adj.candidates[i].max_abs_diff, d);
                    ++i;
                }
            }
        }
    }
    finish<GaussPowerForm>(adj);
    return adj;
}

Adjudication adjudicate_twisted_gauss(Parity parity, i64 p_max, double tol) {
    Adjudication adj = start(parity == Parity::even ? "twisted-gauss-even" : "twisted-gauss-odd", twisted_gauss_forms(), parity, tol);
    for (i64 p : primes_in(3, p_max)) {
        PrimeModulus pm(p);
        for (i64 n = 1; n < p; ++n) {
            for (i64 am = 1; am < p; ++am) {
                Complex brute = twisted_gauss_sum(parity, ResidueClass(n, p), ResidueClass(am, p), pm);
                i64 u = mulmod(am, inverse_mod(n, p), p);
                ++adj.cases;
                std::size_t i = 0;
                for (auto& f : twisted_gauss_forms()) {
                    if (f.parity != parity) continue;
                    double d = std::abs(f.eval(p, u) - brute);
                    adj.candidates[i].max_abs_diff = std::max(adj.candidates[i].max_abs_diff, d);
                    ++i;
                }
            }
        }
    }
    finish<TwistedGaussForm>(adj);
    return adj;
}

std::vector<IdentityMismatch> gauss_power_printed_mismatches(const std::vector<int>& ks, i64 p_max, double tol) {
    std::vector<IdentityMismatch> out;
    for (i64 p : primes_in(3, p_max)) {
        PrimeModulus pm(p);
        for (int k : ks) {
            for (i64 c = 1; c < p; ++c) {
                Complex kc = hyper_kloosterman(k, ResidueClass(c, p), pm);
                Complex kmc = hyper_kloosterman(k, ResidueClass(p - c, p), pm);
                for (auto& f : gauss_power_forms()) {
                    std::string id = f.id;
                    if (id.find("statement") == std::string::npos) continue;
                    Complex brute = gauss_weighted_sum(f.parity, k, ResidueClass(c, p), pm);
                    Complex closed = f.eval(k, p, kc, kmc);
                    double d = std::abs(closed - brute);
                    if (d >= tol)
                        out.push_back({std::string("gauss-power-") + (f.parity == Parity::even ? "even" : "odd"), p,
                                       {{"k", double(k)}, {"C", double(c)}}, closed, brute, d});
                }
            }
        }
    }
    return out;
}

std::vector<IdentityMismatch> twisted_gauss_printed_mismatches(i64 p_max, double tol) {
    std::vector<IdentityMismatch> out;
    for (i64 p : primes_in(3, p_max)) {
        PrimeModulus pm(p);
        for (i64 n = 1; n < p; ++n) {
            for (i64 am = 1; am < p; ++am) {
                i64 u = mulmod(am, inverse_mod(n, p), p);
                for (auto& f : twisted_gauss_forms()) {
                    std::string id = f.id;
                    if (id.find("statement") == std::string::npos) continue;
                    Complex brute = twisted_gauss_sum(f.parity, ResidueClass(n, p), ResidueClass(am, p), pm);
                    Complex closed = f.eval(p, u);
                    double d = std::abs(closed - brute);
                    if (d >= tol)
                        out.push_back({std::string("twisted-gauss-") + (f.parity == Parity::even ? "even" : "odd"), p,
                                       {{"n", double(n)}, {"am", double(am)}}, closed, brute, d});
                }
            }
        }
    }
    return out;
}

}  // namespace ntw
