#include "tau2/afe.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "tau2/estermann.hpp"
#include "tau2/exp_sums.hpp"
#include "tau2/kernels.hpp"
#include "tau2/sampling.hpp"
#include "tau2/sieve.hpp"

namespace ntw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kAnchor = 64;

}  // namespace

VWeight::VWeight(int parity, double t, VWeightParams params) : parity_(parity), t_(t), params_(params) {
    if (parity != 0 && parity != 1) throw std::invalid_argument("parity must be 0 or 1");
    if (!(params.quadrature_step > 0.0) || !(params.truncation_height > 0.0))
        throw std::invalid_argument("bad V quadrature parameters");
    right_ = make_line(params.contour_abscissa);
    use_left_ = t == 0.0;
    if (use_left_) left_ = make_line(-1.0);
}

VWeight::Line VWeight::make_line(double c) const {
    const double h = params_.quadrature_step;
    const int n = static_cast<int>(std::ceil(params_.truncation_height / h));
    const Complex s(0.5, t_);
    const double a = parity_;
    const Complex den = gamma(0.5 * (s + a)) * gamma(0.5 * (1.0 - s + a));
    Line L{c, {}};
    L.g.resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        Complex w(c, j * h);
        Complex cw = std::cos(kPi * w);
        Complex num = gamma(0.5 * (s + w + a)) * gamma(0.5 * (1.0 - s + w + a));
        L.g[j] = std::exp(w * w - w * std::log(kPi)) * cw * cw / w * (num / den);
    }
    return L;
}

Complex VWeight::eval(const Line& L, double y) const {
    const double h = params_.quadrature_step;
    const double ly = std::log(y);
    const Complex step = std::polar(1.0, -h * ly);
    KahanSum<Complex> acc;
    Complex ph(1.0, 0.0);
    for (std::size_t j = 1; j < L.g.size(); ++j) {
        if (j % kAnchor == 0)
            ph = std::polar(1.0, -double(j) * h * ly);
        else
            ph *= step;
        acc += L.g[j] * ph;
    }
    Complex sum = L.g[0] + 2.0 * Complex(acc.value().real(), 0.0);
    return std::exp(-L.c * ly) * h / (2.0 * kPi) * sum;
}

double VWeight::operator()(double y) const {
    if (!(y > 0.0)) throw std::domain_error("V(y) needs y > 0");
    if (use_left_ && y < 1.0) return 1.0 + eval(left_, y).real();
    return eval(right_, y).real();
}

double VWeight::imag_part(double y) const {
    if (!(y > 0.0)) throw std::domain_error("V(y) needs y > 0");
    // both halves of the line summed separately; the integrand at c - iv is
    // evaluated directly, not by reflection
    const Line& L = (use_left_ && y < 1.0) ? left_ : right_;
    const double h = params_.quadrature_step;
    const Complex s(0.5, t_);
    const double a = parity_;
    const Complex den = gamma(0.5 * (s + a)) * gamma(0.5 * (1.0 - s + a));
    KahanSum<Complex> acc;
    const int n = static_cast<int>(L.g.size()) - 1;
    for (int j = -n; j <= n; ++j) {
        Complex w(L.c, j * h);
        Complex cw = std::cos(kPi * w);
        Complex num = gamma(0.5 * (s + w + a)) * gamma(0.5 * (1.0 - s + w + a));
        acc += std::exp(w * w - w * std::log(kPi * y)) * cw * cw / w * (num / den);
    }
    return (acc.value() * h / (2.0 * kPi)).imag();
}

double VWeight::decay_constant(double B) const {
    if (!(B > 0.0)) throw std::invalid_argument("decay constant needs B > 0");
    const double h = params_.quadrature_step;
    const Complex s(0.5, t_);
    const double a = parity_;
    const double den = std::abs(gamma(0.5 * (s + a)) * gamma(0.5 * (1.0 - s + a)));
    auto mag = [&](double v) {
        Complex w(B, v);
        Complex cw = std::cos(kPi * w);
        Complex num = gamma(0.5 * (s + w + a)) * gamma(0.5 * (1.0 - s + w + a));
        return std::abs(std::exp(w * w - w * std::log(kPi)) * cw * cw / w) * std::abs(num) / den;
    };
    // the integrand is even in v up to conjugation; integrate until it is negligible
    KahanSum<double> acc;
    double f0 = mag(0.0);
    acc += 0.5 * f0;
    double peak = f0;
    for (int j = 1;; ++j) {
        double v = j * h;
        double f = mag(v);
        acc += f;
        peak = std::max(peak, f);
        if (v > params_.truncation_height && f < 1e-18 * peak) break;
        if (v > 80.0) break;
    }
    return 2.0 * h * acc.value() / (2.0 * kPi);
}

VTable::VTable(const VWeight& V, double y_min, double y_max) {
    if (!(y_min > 0.0) || !(y_max >= y_min)) throw std::invalid_argument("bad V table range");
    u0_ = std::log(y_min);
    double span = std::log(y_max) - u0_;
    panels_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / width_ + 1e-12)));
    const double half = 0.5 * width_;
    std::vector<double> ys;
    ys.reserve(panels_ * kNodes);
    for (std::size_t p = 0; p < panels_; ++p) {
        double mid = u0_ + width_ * (double(p) + 0.5);
        for (int k = 0; k < kNodes; ++k) ys.push_back(std::exp(mid + half * std::cos(kPi * (k + 0.5) / kNodes)));
    }
    auto f = kernels::v_table_omp(V, ys);
    coef_.assign(panels_ * kNodes, 0.0);
    for (std::size_t p = 0; p < panels_; ++p)
        for (int j = 0; j < kNodes; ++j) {
            double c = 0.0;
            for (int k = 0; k < kNodes; ++k) c += f[p * kNodes + k] * std::cos(kPi * j * (k + 0.5) / kNodes);
            coef_[p * kNodes + j] = (j == 0 ? 1.0 : 2.0) * c / kNodes;
        }
}

double VTable::operator()(double y) const {
    double u = std::log(y) - u0_;
    double pos = u / width_;
    if (pos < -1e-9 || pos > double(panels_) + 1e-9) throw std::out_of_range("y outside the V table");
    std::size_t p = std::min(panels_ - 1, static_cast<std::size_t>(std::max(0.0, pos)));
    double x = 2.0 * (pos - double(p)) - 1.0;
    const double* c = &coef_[p * kNodes];
    // Clenshaw
    double b1 = 0.0, b2 = 0.0;
    for (int j = kNodes - 1; j >= 1; --j) {
        double b0 = 2.0 * x * b1 - b2 + c[j];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + c[0];
}

BilinearTruncation choose_truncation(const VWeight& V, double q, double target) {
    std::vector<std::pair<double, double>> consts;    // (B, C_B q^B)
    for (double B = 1.0; B <= 12.0; B += 0.5) consts.emplace_back(B, V.decay_constant(B) * std::pow(q, B));
    for (double ycut = 1.0; ycut < 1e12; ycut *= 2.0) {
        double Y = std::floor(q * ycut);
        if (Y < 2.0) continue;
        double best = std::numeric_limits<double>::infinity();
        for (auto [B, c] : consts) best = std::min(best, c * divisor_tail_bound(0.5 + B, Y));
        if (best < target) return {Y, best};
    }
    throw std::runtime_error("no truncation reaches the requested tail bound");
}

const char* to_string(AfeWeight w) { return w == AfeWeight::printed ? "printed" : "shifted"; }

namespace {

// k^{-s} for k in [0, n], index 0 unused
std::vector<Complex> power_table(Complex s, i64 n) {
    std::vector<Complex> out(static_cast<std::size_t>(n) + 1);
    for (i64 k = 1; k <= n; ++k) out[k] = std::exp(-s * std::log(double(k)));
    return out;
}

}  // namespace

namespace {

// V(k/q) for k = 1..Y at index k - 1
std::vector<double> v_values(const VTable& vt, i64 Y, double q) {
    std::vector<double> out(static_cast<std::size_t>(std::max<i64>(Y, 0)));
    for (i64 k = 1; k <= Y; ++k) out[k - 1] = vt(double(k) / q);
    return out;
}

// Everything character-independent. With ind = discrete log, chi_j(m) conj(chi_j)(n)
// = w^{j d} for d = ind m - ind n, so the double sum for chi_j is sum_d w^{j d} gamma[d].
struct AfeSetup {
    i64 p;
    Complex s;
    std::vector<BilinearTruncation> tr;
    std::vector<std::vector<Complex>> gamma;    // per parity, indexed by d mod p - 1
};

AfeSetup afe_setup(double t, i64 p, AfeWeight weight, double target, bool need_even, bool need_odd) {
    AfeSetup S{p, Complex(0.5, t), {}, {}};
    auto G = CharacterGroup::make(p);
    for (int a = 0; a < 2; ++a) {
        bool need = a == 0 ? need_even : need_odd;
        S.gamma.emplace_back(static_cast<std::size_t>(p - 1), Complex(0.0, 0.0));
        if (!need) {
            S.tr.push_back({0.0, 0.0});
            continue;
        }
        VWeight V(a, weight == AfeWeight::shifted ? t : 0.0);
        auto tr = choose_truncation(V, double(p), target);
        S.tr.push_back(tr);
        const i64 Y = static_cast<i64>(tr.cutoff);
        auto vk = v_values(VTable(V, 1.0 / double(p), double(Y) / double(p)), Y, double(p));
        auto pw = power_table(S.s, Y);
        std::vector<i64> ind(static_cast<std::size_t>(Y) + 1);
        for (i64 k = 1; k <= Y; ++k) ind[k] = G->dlog(k);
        std::vector<KahanSum<Complex>> acc(static_cast<std::size_t>(p - 1));
        for (i64 m = 1; m <= Y; ++m) {
            if (ind[m] < 0) continue;
            Complex fm = std::conj(pw[m]);
            for (i64 n = 1; n <= Y / m; ++n) {
                if (ind[n] < 0) continue;
                acc[static_cast<std::size_t>(mod(ind[m] - ind[n], p - 1))] += fm * pw[n] * vk[m * n - 1];
            }
        }
        for (i64 d = 0; d < p - 1; ++d) S.gamma[a][d] = acc[d].value();
    }
    return S;
}

AfeResult afe_one(const DirichletCharacter& chi, const AfeSetup& S) {
    const i64 p = S.p;
    const int a = chi.parity();
    const i64 g = chi.group().generator();
    KahanSum<Complex> acc;
    i64 gd = 1;
    for (i64 d = 0; d < p - 1; ++d) {
        acc += chi(gd) * S.gamma[a][d];
        gd = gd * g % p;
    }
    Complex rhs = 2.0 * acc.value();
    Complex lhs = dirichlet_L(1.0 - S.s, chi) * dirichlet_L(S.s, chi.conj());
    return {lhs, rhs, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), S.tr[a]};
}

}  // namespace

AfeResult afe_check(double t, const DirichletCharacter& chi, AfeWeight weight, double target) {
    if (chi.is_principal()) throw std::invalid_argument("afe_check needs a non-principal character");
    int a = chi.parity();
    return afe_one(chi, afe_setup(t, chi.modulus(), weight, target, a == 0, a == 1));
}

std::vector<AfeResult> afe_check_all(double t, i64 p, AfeWeight weight, double target) {
    auto G = CharacterGroup::make(p);
    auto chis = G->primitive();
    bool even = false, odd = false;
    for (auto& chi : chis) (chi.parity() ? odd : even) = true;
    auto S = afe_setup(t, p, weight, target, even, odd);
    std::vector<AfeResult> out;
    for (auto& chi : chis) out.push_back(afe_one(chi, S));
    return out;
}

BilinearForm::BilinearForm(i64 q, double t, int parity, double target, VWeightParams params) : q_(q) {
    if (q < 1) throw std::invalid_argument("modulus must be >= 1");
    auto tr = choose_truncation(VWeight(parity, 0.0, params), double(q), target);
    cutoff_ = tr.cutoff;
    tail_ = tr.tail_bound;
    build(t, parity, params);
}

BilinearForm::BilinearForm(i64 q, double t, int parity, double cutoff, double tail_bound, VWeightParams params)
    : q_(q), cutoff_(std::floor(cutoff)), tail_(tail_bound) {
    if (q < 1) throw std::invalid_argument("modulus must be >= 1");
    build(t, parity, params);
}

void BilinearForm::build(double t, int parity, VWeightParams params) {
    const Complex s(0.5, t);
    const i64 Y = static_cast<i64>(cutoff_);
    VWeight V(parity, 0.0, params);
    auto pw = power_table(s, Y);
    auto vk = v_values(VTable(V, 1.0 / double(q_), double(std::max<i64>(Y, 1)) / double(q_)), Y, double(q_));
    std::vector<i64> res(static_cast<std::size_t>(Y) + 1, -1);    // n mod q, -1 unless coprime
    for (i64 n = 1; n <= Y; ++n)
        if (gcd(n, q_) == 1) res[n] = n % q_;
    std::vector<KahanSum<Complex>> acc(static_cast<std::size_t>(q_));
    for (i64 m = 1; m <= Y; ++m) {
        if (res[m] < 0) continue;
        i64 mb = inverse_mod(m, q_);
        Complex fm = std::conj(pw[m]);
        for (i64 n = 1; n <= Y / m; ++n) {
            if (res[n] < 0) continue;
            acc[static_cast<std::size_t>(res[n] * mb % q_)] += fm * pw[n] * vk[m * n - 1];
        }
    }
    c_.resize(static_cast<std::size_t>(q_));
    for (i64 r = 0; r < q_; ++r) c_[r] = acc[r].value();
}

BilinearValue BilinearForm::at(i64 A) const {
    if (gcd(A, q_) != 1) throw NotInvertible(mod(A, q_), q_, gcd(A, q_));
    KahanSum<Complex> acc;
    for (i64 r = 0; r < q_; ++r) acc += unit_root(mulmod(A, r, q_), q_) * c_[r];
    return {acc.value(), tail_, cutoff_};
}

BilinearValue bilinear_form(double t, i64 q, i64 A, int parity, double target) {
    return BilinearForm(q, t, parity, target).at(A);
}

ProbeResult conjecture_probe(const std::vector<i64>& primes, std::size_t samples_per_prime, double t,
                             std::uint64_t seed, double target) {
    for (i64 q : primes) PrimeModulus check(q);
    std::vector<ProbeRow> rows(primes.size());
    std::vector<std::vector<ProbeSample>> samples(primes.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < primes.size(); ++i) {
        i64 q = primes[i];
        auto As = seeded_sample(units(q), samples_per_prime, mix_seed(seed, static_cast<std::uint64_t>(q)));
        BilinearForm B0(q, t, 0, target), B1(q, t, 1, target);
        ProbeRow row{q, 0, t, 0.0, 0.0, 0.0, 0.0, 0.0};
        for (i64 A : As) {
            auto v0 = B0.at(A), v1 = B1.at(A);
            double a0 = std::abs(v0.value), a1 = std::abs(v1.value);
            double tail = std::max(v0.tail_bound, v1.tail_bound);
            samples[i].push_back({q, A, t, a0, a1, tail});
            if (a0 > row.max_B0 || row.A == 0) {
                row.max_B0 = a0;
                row.A = A;
            }
            row.max_B1 = std::max(row.max_B1, a1);
            row.mean_B0 += a0;
            row.mean_B1 += a1;
            row.tail_bound = std::max(row.tail_bound, tail);
        }
        if (!As.empty()) {
            row.mean_B0 /= double(As.size());
            row.mean_B1 /= double(As.size());
        }
        rows[i] = row;
    }
    ProbeResult out;
    out.rows = std::move(rows);
    for (auto& v : samples) out.samples.insert(out.samples.end(), v.begin(), v.end());
    return out;
}

PartialSum kloosterman_dirichlet_partial(Complex s, i64 p, i64 a, i64 N1, i64 N) {
    PrimeModulus pm(p);
    if (gcd(a, p) != 1) throw NotInvertible(mod(a, p), p, gcd(a, p));
    if (N1 < 1) throw std::invalid_argument("partial sum needs N1 >= 1");
    if (N1 >= N) return {Complex(0.0, 0.0), 0.0};
    auto tau = kernels::tau_segment_serial(N1 + 1, N);
    auto K = kloosterman_row(p);
    KahanSum<Complex> acc;
    for (i64 n = N1 + 1; n <= N; ++n)
        acc += double(tau[n - N1 - 1]) * K[static_cast<std::size_t>(mulmod(a, n, p))] *
               std::exp(-s * std::log(double(n)));
    Complex v = acc.value();
    return {v, std::abs(v) / (std::sqrt(double(p)) / std::sqrt(double(N1)))};
}

Complex twisted_second_moment(Complex s, i64 q, Complex z, Complex w, i64 A) {
    PrimeModulus pm(q);
    auto G = CharacterGroup::make(q);
    KahanSum<Complex> acc;
    for (auto& chi : G->all()) {
        auto cb = chi.conj();
        acc += chi(-A) * dirichlet_L(1.0 - s + z, cb) * dirichlet_L(1.0 - s - w, cb);
    }
    return acc.value() / double(q - 1);
}

}  // namespace ntw
