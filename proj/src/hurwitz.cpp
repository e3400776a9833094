// Hurwitz zeta by Euler-Maclaurin and Dirichlet L-values through the
// decomposition L(s, chi) = q^{-s} sum_{r=1}^{q} chi(r) zeta(s, r/q).
//
// With N >= 1.3 |Im s| head terms and twelve Bernoulli corrections the
// remainder after the K-th correction is bounded by the first omitted term,
// |B_{26}/26!| |(s)_{25}| (N+x)^{-Re s - 25}, which at s = 1/2 + i t and
// N = 1.3 t is below 1e-20 for all t >= 16 -- far under the 1e-10 target.

#include "hurwitz_internal.hpp"

#include <cmath>

#include "czp/moment.hpp"
#include "czp/rat.hpp"

namespace czp {

namespace detail {

namespace {

// B_{2j} / (2j)! for j = 1..12, evaluated once from the exact fractions
// B_2..B_24 = 1/6, -1/30, 1/42, -1/30, 5/66, -691/2730, 7/6, -3617/510,
// 43867/798, -174611/330, 854513/138, -236364091/2730.
const std::vector<double>& bernoulli_over_factorial() {
    static const std::vector<double> table = [] {
        const long num[12] = {1,     -1,    1,      -1,      5,      -691,
                              7,     -3617, 43867,  -174611, 854513, -236364091};
        const long den[12] = {6, 30, 42, 30, 66, 2730, 6, 510, 798, 330, 138, 2730};
        std::vector<double> t;
        for (int j = 1; j <= 12; ++j) {
            Rational b(num[j - 1], den[j - 1]);
            t.push_back(to_double(b / factorial_rat(2 * j)));
        }
        return t;
    }();
    return table;
}

// w^z for real w > 0 given lgw = log(w)
cplx real_pow(double lgw, cplx z) {
    return std::polar(std::exp(z.real() * lgw), z.imag() * lgw);
}

}  // namespace

void EmTables::build(double x_in, double sigma_in, int n_cap) {
    x = x_in;
    sigma = sigma_in;
    lg.resize(static_cast<size_t>(n_cap) + 1);
    rs.resize(static_cast<size_t>(n_cap) + 1);
    for (int n = 0; n <= n_cap; ++n) {
        lg[static_cast<size_t>(n)] = std::log(n + x);
        rs[static_cast<size_t>(n)] = std::exp(-sigma * lg[static_cast<size_t>(n)]);
    }
}

cplx em_head(const EmTables& tb, int N, double t) {
    std::complex<long double> acc(0.0L, 0.0L);
    for (int n = 0; n < N; ++n) {
        double ph = -t * tb.lg[static_cast<size_t>(n)];
        double r = tb.rs[static_cast<size_t>(n)];
        acc += std::complex<long double>(r * std::cos(ph), r * std::sin(ph));
    }
    return cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

cplx em_tail(cplx s, double lgw, int K, bool regularized) {
    cplx pole = regularized ? cplx(-lgw, 0.0) : real_pow(lgw, 1.0 - s) / (s - 1.0);
    cplx ws = real_pow(lgw, -s);
    cplx acc = pole + 0.5 * ws;
    const std::vector<double>& bf = bernoulli_over_factorial();
    double winv2 = std::exp(-2.0 * lgw);
    cplx rising = s;             // (s)_{2j-1} at j = 1
    cplx wpow = ws * std::exp(-lgw);  // w^{-s-2j+1} at j = 1
    for (int j = 1; j <= K; ++j) {
        acc += bf[static_cast<size_t>(j - 1)] * rising * wpow;
        rising *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
        wpow *= winv2;
    }
    return acc;
}

int em_head_length(double t_abs, double n_multiplier) {
    int n = static_cast<int>(std::ceil(n_multiplier * t_abs));
    return n < 16 ? 16 : n;
}

}  // namespace detail

namespace {

void check_em_args(cplx s, double x, double n_multiplier, int bernoulli_terms) {
    if (!(x > 0.0) || x > 1.0) throw ValidationError("hurwitz_zeta requires x in (0, 1]");
    if (!(n_multiplier >= 0.1) || !(n_multiplier <= 100.0))
        throw ValidationError("Euler-Maclaurin head multiplier must lie in [0.1, 100]");
    if (bernoulli_terms < 1 || bernoulli_terms > 12)
        throw ValidationError("Euler-Maclaurin Bernoulli depth must lie in 1..12");
    if (std::abs(s.imag()) > 1e5)
        throw CapacityError("hurwitz_zeta: |Im s| > 1e5 exceeds the desk-scale budget");
}

}  // namespace

cplx hurwitz_zeta(cplx s, double x, double n_multiplier, int bernoulli_terms) {
    check_em_args(s, x, n_multiplier, bernoulli_terms);
    if (s == cplx(1.0, 0.0)) throw NumericDomainError("hurwitz_zeta has a pole at s = 1");
    int N = detail::em_head_length(std::abs(s.imag()), n_multiplier);
    detail::EmTables tb;
    tb.build(x, s.real(), N);
    return detail::em_head(tb, N, s.imag()) +
           detail::em_tail(s, tb.lg[static_cast<size_t>(N)], bernoulli_terms, false);
}

cplx hurwitz_zeta(cplx s, double x) { return hurwitz_zeta(s, x, 1.3, 12); }

cplx L_value(cplx s, const DirichletCharacter& chi, double n_multiplier, int bernoulli_terms) {
    check_em_args(s, 1.0, n_multiplier, bernoulli_terms);
    bool at_pole = (s == cplx(1.0, 0.0));
    if (at_pole && chi.is_principal())
        throw NumericDomainError("L(s, chi) has a pole at s = 1 for the principal character");
    int N = detail::em_head_length(std::abs(s.imag()), n_multiplier);
    cplx acc(0.0, 0.0);
    detail::EmTables tb;
    for (int64_t r = 1; r <= chi.q; ++r) {
        if (chi.is_zero_at(r)) continue;
        double x = static_cast<double>(r) / static_cast<double>(chi.q);
        tb.build(x, s.real(), N);
        cplx z = detail::em_head(tb, N, s.imag()) +
                 detail::em_tail(s, tb.lg[static_cast<size_t>(N)], bernoulli_terms, at_pole);
        acc += chi.value(r) * z;
    }
    return detail::real_pow(std::log(static_cast<double>(chi.q)), -s) * acc;
}

cplx L_value(cplx s, const DirichletCharacter& chi) { return L_value(s, chi, 1.3, 12); }

}  // namespace czp
