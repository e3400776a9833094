// Exact backend for the main-term jets.
//
// Every sigma component reduces to integrals of products of the univariate
// kernel jets in a single profile variable w (the common argument 1 - t or
// 1 - t - t1 of the two kernels).  The jets' coefficients live in the class
// of piecewise exponential-polynomials with breakpoint 3/4 (the cutoff of
// P(u)/u inside W_2), so all integrals close over ExpNum.
//
// Families:
//   A (sigma_11, 12, 22):  int_0^1 F_m(w) G_n(w) dw, split at w = 3/4.
//   B (sigma_13, 23, and the first term of 33):
//       int_0^{3/4} omega(t) H_{mn}(1 - t) dt,
//       H_{mn}(x) = int_0^x F_m G_n,    omega = P(t)/t or P(t)^2/t.
//     The composition H(1 - t) crosses the 3/4 breakpoint of H at t = 1/4,
//     so the outer integral splits there.
//   The second term of sigma_33 is the triple integral: with
//       A_{mn}(x) = int_0^x V2_m V2_n   (a plain polynomial),
//     the middle integral over t1 <= min(3/4, 1 - t) is a fixed-range
//     convolution of P(t1)/t1 against A_{mn} when t <= 1/4 and a from-zero
//     convolution when t >= 1/4, and the outer t-integral splits at 1/4
//     exactly as in family B.

#include "czp/mainterm.hpp"

#include <stdexcept>

#include "czp/arith.hpp"

namespace czp {

namespace {

EPolyPart to_epart(const RPoly& p) {
    return p.map<ExpNum>([](const Rational& r) { return ExpNum(r); });
}

ExpNum eval_piece(const PiecewiseExp& f, const Rational& t) {
    static const Rational kBreak(3, 4);
    return (t <= kBreak) ? f.lo.eval(t) : f.hi.eval(t);
}

// int_0^1 F_m G_n dw over both pieces.
Jet2<ExpNum> family_a(const UniJetExact& f, const UniJetExact& g, double ca, double cb) {
    const Rational kBreak(3, 4);
    int na = static_cast<int>(f.size()) - 1;
    int nb = static_cast<int>(g.size()) - 1;
    Jet2<ExpNum> r(na, nb, ca, cb);
    for (int m = 0; m <= na; ++m)
        for (int n = 0; n <= nb; ++n) {
            ExpNum v = (f[static_cast<size_t>(m)].lo * g[static_cast<size_t>(n)].lo)
                           .integrate(Rational(0), kBreak);
            v += (f[static_cast<size_t>(m)].hi * g[static_cast<size_t>(n)].hi)
                     .integrate(kBreak, Rational(1));
            r.at(m, n) = v;
        }
    return r;
}

// int_0^{3/4} omega(t) * [int_0^{1-t} F_m G_n dw] dt.
Jet2<ExpNum> family_b(const UniJetExact& f, const UniJetExact& g, const EPolyPart& omega,
                      double ca, double cb) {
    const Rational kBreak(3, 4), kQuarter(1, 4);
    int na = static_cast<int>(f.size()) - 1;
    int nb = static_cast<int>(g.size()) - 1;
    Jet2<ExpNum> r(na, nb, ca, cb);
    if (omega.is_zero()) return r;
    for (int m = 0; m <= na; ++m)
        for (int n = 0; n <= nb; ++n) {
            ExpPoly prod_lo = f[static_cast<size_t>(m)].lo * g[static_cast<size_t>(n)].lo;
            ExpPoly prod_hi = f[static_cast<size_t>(m)].hi * g[static_cast<size_t>(n)].hi;
            // Cumulative integral H, continuous across 3/4.
            ExpPoly h_lo = prod_lo.antiderivative_from_zero();
            ExpPoly h_hi = prod_hi.antiderivative_from_zero();
            ExpNum jump = h_lo.eval(kBreak) - h_hi.eval(kBreak);
            h_hi += ExpPoly::constant(jump);
            // 1 - t lands on the hi piece for t <= 1/4, lo for t in [1/4, 3/4].
            ExpNum v = (h_hi.compose_affine(Rational(-1), Rational(1)) * omega)
                           .integrate(Rational(0), kQuarter);
            v += (h_lo.compose_affine(Rational(-1), Rational(1)) * omega)
                     .integrate(kQuarter, kBreak);
            r.at(m, n) = v;
        }
    return r;
}

// The triple-integral term of sigma_33; f and g are V2 jets (polynomial, so
// only the lo piece is consulted and only entries 0 and 1 are nonzero).
Jet2<ExpNum> sigma33_tail(const UniJetExact& f, const UniJetExact& g, const RPoly& pred,
                          double ca, double cb) {
    const Rational kBreak(3, 4), kQuarter(1, 4);
    int na = static_cast<int>(f.size()) - 1;
    int nb = static_cast<int>(g.size()) - 1;
    Jet2<ExpNum> r(na, nb, ca, cb);
    if (pred.is_zero()) return r;
    EPolyPart pred_part = to_epart(pred);
    ExpPoly pred_exp(pred_part);
    for (int m = 0; m <= na; ++m)
        for (int n = 0; n <= nb; ++n) {
            ExpPoly prod = f[static_cast<size_t>(m)].lo * g[static_cast<size_t>(n)].lo;
            ExpPoly a2 = prod.antiderivative_from_zero();
            if (a2.is_zero()) continue;
            // V2 jets carry frequency 0 only, so A_{mn} is one polynomial.
            if (a2.parts().size() != 1 || !(a2.parts().begin()->first == 0))
                throw std::logic_error("V2 product acquired an exponential part");
            const EPolyPart& a2p = a2.parts().begin()->second;
            // Middle t1-integral as a function of s = 1 - t.
            ExpPoly sat = convolve_fixed_range(pred_exp, a2p, Rational(0), kBreak);
            ExpPoly full = convolve_from_zero(pred_exp, a2p);
            ExpNum v = (sat.compose_affine(Rational(-1), Rational(1)) * pred_part)
                           .integrate(Rational(0), kQuarter);
            v += (full.compose_affine(Rational(-1), Rational(1)) * pred_part)
                     .integrate(kQuarter, kBreak);
            r.at(m, n) = v;
        }
    return r;
}

void check_component_args(int i, int j, int na, int nb) {
    if (i < 1 || i > 3 || j < 1 || j > 3)
        throw ValidationError("sigma component indices must lie in 1..3");
    if (na < 0 || nb < 0) throw ValidationError("jet orders must be non-negative");
}

}  // namespace

UniJetExact v_uni_exact(int i, const MollifierConfig& cfg, const Rational& center, int order) {
    if (i != 1 && i != 2) throw ValidationError("V_i kernel index must be 1 or 2");
    if (order < 0) throw ValidationError("jet orders must be non-negative");
    const RPoly& pi = (i == 1) ? cfg.p1 : cfg.p2;
    UniJetExact out(static_cast<size_t>(order) + 1);
    RPoly v0 = pi.scaled(center * cfg.theta) + pi.derivative();
    out[0].lo = ExpPoly(to_epart(v0));
    out[0].hi = out[0].lo;
    if (order >= 1) {
        out[1].lo = ExpPoly(to_epart(pi.scaled(cfg.theta)));
        out[1].hi = out[1].lo;
    }
    return out;
}

UniJetExact w2_uni_exact(const MollifierConfig& cfg, const Rational& center, int order) {
    if (order < 0) throw ValidationError("jet orders must be non-negative");
    UniJetExact out(static_cast<size_t>(order) + 1);
    if (cfg.p.is_zero() || cfg.p2.is_zero()) return out;
    const Rational kBreak(3, 4);
    RPoly pred = cfg.p.shift_down();
    // Expanding a = center + da:  e^{-a theta u} = e^{-center theta u} *
    // sum_m (-theta u)^m da^m / m!, and V2(a, s) = V2(center, s) + da theta P2(s).
    Rational gamma = -center * cfg.theta;
    EPolyPart v2_0 = to_epart(cfg.p2.scaled(center * cfg.theta) + cfg.p2.derivative());
    EPolyPart v2_1 = to_epart(cfg.p2.scaled(cfg.theta));
    std::vector<ExpPoly> f;  // f_m(u) = e^{gamma u} (-theta)^m u^m P(u)/u / m!
    Rational coef(1);
    for (int m = 0; m <= order; ++m) {
        if (m > 0) coef *= -cfg.theta / m;
        RPoly part = pred * RPoly::monomial(coef, static_cast<size_t>(m));
        f.emplace_back(gamma, to_epart(part));
    }
    for (int m = 0; m <= order; ++m) {
        ExpPoly lo = convolve_from_zero(f[static_cast<size_t>(m)], v2_0);
        ExpPoly hi = convolve_fixed_range(f[static_cast<size_t>(m)], v2_0, Rational(0), kBreak);
        if (m >= 1) {
            lo += convolve_from_zero(f[static_cast<size_t>(m) - 1], v2_1);
            hi += convolve_fixed_range(f[static_cast<size_t>(m) - 1], v2_1, Rational(0), kBreak);
        }
        out[static_cast<size_t>(m)].lo = lo;
        out[static_cast<size_t>(m)].hi = hi;
    }
    return out;
}

Jet2<ExpNum> v_jet_exact(int i, const MollifierConfig& cfg, int variable, const Rational& t,
                         const Rational& a0, const Rational& b0, int na, int nb) {
    if (variable != 0 && variable != 1) throw ValidationError("jet variable must be 0 or 1");
    Jet2<ExpNum> r(na, nb, to_double(a0), to_double(b0));
    UniJetExact u = v_uni_exact(i, cfg, variable == 0 ? a0 : b0, variable == 0 ? na : nb);
    for (size_t k = 0; k < u.size(); ++k) {
        ExpNum v = eval_piece(u[k], t);
        if (variable == 0)
            r.at(static_cast<int>(k), 0) = v;
        else
            r.at(0, static_cast<int>(k)) = v;
    }
    return r;
}

Jet2<ExpNum> w2_jet_exact(const MollifierConfig& cfg, int variable, const Rational& t,
                          const Rational& a0, const Rational& b0, int na, int nb) {
    if (variable != 0 && variable != 1) throw ValidationError("jet variable must be 0 or 1");
    Jet2<ExpNum> r(na, nb, to_double(a0), to_double(b0));
    UniJetExact u = w2_uni_exact(cfg, variable == 0 ? a0 : b0, variable == 0 ? na : nb);
    for (size_t k = 0; k < u.size(); ++k) {
        ExpNum v = eval_piece(u[k], t);
        if (variable == 0)
            r.at(static_cast<int>(k), 0) = v;
        else
            r.at(0, static_cast<int>(k)) = v;
    }
    return r;
}

Jet2<ExpNum> sigma_component_exact(int i, int j, const MollifierConfig& cfg,
                                   const Rational& a0, const Rational& b0, int na, int nb) {
    check_component_args(i, j, na, nb);
    cfg.validate();
    if (i > j) return sigma_component_exact(j, i, cfg, b0, a0, nb, na).transposed();
    double ca = to_double(a0), cb = to_double(b0);
    RPoly pred = cfg.p.is_zero() ? RPoly() : cfg.p.shift_down();
    switch (i * 10 + j) {
        case 11:
            return family_a(v_uni_exact(1, cfg, a0, na), v_uni_exact(1, cfg, b0, nb), ca, cb);
        case 12:
            return family_a(v_uni_exact(1, cfg, a0, na), w2_uni_exact(cfg, b0, nb), ca, cb)
                .scaled(ExpNum(-1));
        case 22: {
            Jet2<ExpNum> r =
                family_a(w2_uni_exact(cfg, a0, na), w2_uni_exact(cfg, b0, nb), ca, cb);
            return cfg.paper_literal_signs ? r.scaled(ExpNum(-1)) : r;
        }
        case 13:
            return family_b(v_uni_exact(1, cfg, a0, na), v_uni_exact(2, cfg, b0, nb),
                            to_epart(pred), ca, cb);
        case 23:
            return family_b(w2_uni_exact(cfg, a0, na), v_uni_exact(2, cfg, b0, nb),
                            to_epart(pred), ca, cb)
                .scaled(ExpNum(-1));
        case 33: {
            UniJetExact f = v_uni_exact(2, cfg, a0, na);
            UniJetExact g = v_uni_exact(2, cfg, b0, nb);
            Jet2<ExpNum> r = family_b(f, g, to_epart(cfg.p * pred), ca, cb);
            return r + sigma33_tail(f, g, pred, ca, cb);
        }
        default:
            throw std::logic_error("unreachable sigma dispatch");
    }
}

Jet2<ExpNum> s_total_exact(const MollifierConfig& cfg, const Rational& a0, const Rational& b0,
                           int na, int nb) {
    Jet2<ExpNum> acc(na, nb, to_double(a0), to_double(b0));
    bool symmetric = (a0 == b0) && (na == nb);
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) {
            Jet2<ExpNum> s = sigma_component_exact(i, j, cfg, a0, b0, na, nb);
            acc = acc + s;
            if (i < j) acc = acc + (symmetric ? s.transposed()
                                              : sigma_component_exact(j, i, cfg, a0, b0, na, nb));
        }
    return acc;
}

}  // namespace czp
