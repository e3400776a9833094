// Quadrature backend for the main-term jets.
//
// Same integrals as the exact backend, same piece decomposition (inner
// breakpoint at w = 3/4 from the P(u)/u cutoff, outer breakpoint at t = 1/4
// where 1 - t crosses it), evaluated by 24-node Gauss-Legendre per dimension
// per smooth piece.  On each piece every integrand is a polynomial in the
// integration variable times (inside W_2) an exponential whose Taylor tail
// beyond degree 47 is far below machine epsilon, so the rules are exact to
// roundoff.  All accumulation runs in long double: extracting the (m, n)
// derivative multiplies coefficient noise by m! n!, which for the degree-5
// smoothing polynomial of interest amplifies double roundoff to ~1e-8 on the
// functional; the 64-bit mantissa keeps the backends within ~1e-12 relative.

#include "czp/mainterm.hpp"

#include <algorithm>
#include <cmath>

#include "czp/arith.hpp"
#include "czp/gl.hpp"

namespace czp {

namespace {

using ldvec = std::vector<long double>;

struct QuadCtx {
    XPoly<long double> p1, p1d, p2, p2d, pred;  // pred(u) = P(u)/u
    long double theta = 0;
    bool has_p = false, has_p2 = false;
};

QuadCtx make_ctx(const MollifierConfig& cfg) {
    auto d = [](const Rational& r) { return to_ldouble(r); };
    QuadCtx c;
    c.p1 = cfg.p1.map<long double>(d);
    c.p1d = c.p1.derivative();
    c.p2 = cfg.p2.map<long double>(d);
    c.p2d = c.p2.derivative();
    if (!cfg.p.is_zero()) c.pred = cfg.p.shift_down().map<long double>(d);
    c.theta = d(cfg.theta);
    c.has_p = !cfg.p.is_zero();
    c.has_p2 = !cfg.p2.is_zero();
    return c;
}

void v_fill(const QuadCtx& c, int i, long double center, long double t, ldvec& out) {
    std::fill(out.begin(), out.end(), 0.0L);
    const XPoly<long double>& p = (i == 1) ? c.p1 : c.p2;
    const XPoly<long double>& pd = (i == 1) ? c.p1d : c.p2d;
    long double pt = p.eval(t);
    out[0] = center * c.theta * pt + pd.eval(t);
    if (out.size() > 1) out[1] = c.theta * pt;
}

void w2_fill(const QuadCtx& c, long double center, long double s, ldvec& out) {
    std::fill(out.begin(), out.end(), 0.0L);
    long double upper = std::min(s, 0.75L);
    if (upper <= 0.0L || !c.has_p || !c.has_p2) return;
    const GaussLegendreRule& r = gl24();
    long double mid = 0.5L * upper, half = 0.5L * upper;
    for (int k = 0; k < kGlNodes; ++k) {
        long double u = mid + half * r.node[static_cast<size_t>(k)];
        long double pre = std::exp(-center * c.theta * u) * c.pred.eval(u) * half *
                          r.weight[static_cast<size_t>(k)];
        long double sv = s - u;
        long double p2v = c.p2.eval(sv);
        long double v20 = center * c.theta * p2v + c.p2d.eval(sv);
        long double v21 = c.theta * p2v;
        // f_m = pre * (-theta u)^m / m!; coefficient m picks up f_m v20 + f_{m-1} v21.
        long double fm = pre, fprev = 0.0L;
        for (size_t m = 0; m < out.size(); ++m) {
            out[m] += fm * v20 + fprev * v21;
            fprev = fm;
            fm *= (-c.theta * u) / static_cast<long double>(m + 1);
        }
    }
}

// acc += sum over GL nodes s of piece [x0,x1]:  weight * f(s) (x) g(s).
template <class F, class G>
void integrate_piece(Jet2<long double>& acc, Jet1<long double>& jf, Jet1<long double>& jg,
                     F&& f_at, G&& g_at, long double x0, long double x1,
                     long double scale = 1.0L) {
    if (x1 <= x0) return;
    const GaussLegendreRule& r = gl24();
    long double mid = 0.5L * (x0 + x1), half = 0.5L * (x1 - x0);
    for (int k = 0; k < kGlNodes; ++k) {
        long double s = mid + half * r.node[static_cast<size_t>(k)];
        f_at(s, jf.c);
        g_at(s, jg.c);
        acc.add_outer(jf, jg, scale * half * r.weight[static_cast<size_t>(k)]);
    }
}

template <class F, class G>
Jet2<long double> family_a(F&& f_at, G&& g_at, int na, int nb, double ca, double cb) {
    Jet2<long double> acc(na, nb, ca, cb);
    Jet1<long double> jf(na), jg(nb);
    integrate_piece(acc, jf, jg, f_at, g_at, 0.0L, 0.75L);
    integrate_piece(acc, jf, jg, f_at, g_at, 0.75L, 1.0L);
    return acc;
}

template <class F, class G, class W>
Jet2<long double> family_b(F&& f_at, G&& g_at, W&& omega, int na, int nb, double ca, double cb) {
    Jet2<long double> acc(na, nb, ca, cb);
    Jet1<long double> jf(na), jg(nb);
    const GaussLegendreRule& r = gl24();
    const long double tcut[3] = {0.0L, 0.25L, 0.75L};
    for (int p = 0; p < 2; ++p) {
        long double tm = 0.5L * (tcut[p] + tcut[p + 1]), th = 0.5L * (tcut[p + 1] - tcut[p]);
        for (int i = 0; i < kGlNodes; ++i) {
            long double t = tm + th * r.node[static_cast<size_t>(i)];
            long double wt = th * r.weight[static_cast<size_t>(i)] * omega(t);
            long double upper = 1.0L - t;
            long double wmid = std::min(0.75L, upper);
            integrate_piece(acc, jf, jg, f_at, g_at, 0.0L, wmid, wt);
            integrate_piece(acc, jf, jg, f_at, g_at, wmid, upper, wt);
        }
    }
    return acc;
}

Jet2<long double> sigma33_tail(const QuadCtx& c, double ca, double cb, int na, int nb) {
    Jet2<long double> acc(na, nb, ca, cb);
    if (!c.has_p) return acc;
    Jet1<long double> jf(na), jg(nb);
    const GaussLegendreRule& r = gl24();
    const long double tcut[3] = {0.0L, 0.25L, 0.75L};
    for (int p = 0; p < 2; ++p) {
        long double tm = 0.5L * (tcut[p] + tcut[p + 1]), th = 0.5L * (tcut[p + 1] - tcut[p]);
        for (int i = 0; i < kGlNodes; ++i) {
            long double t = tm + th * r.node[static_cast<size_t>(i)];
            long double wt = th * r.weight[static_cast<size_t>(i)] * c.pred.eval(t);
            long double up1 = std::min(0.75L, 1.0L - t);
            long double t1m = 0.5L * up1, t1h = 0.5L * up1;
            for (int k1 = 0; k1 < kGlNodes; ++k1) {
                long double t1 = t1m + t1h * r.node[static_cast<size_t>(k1)];
                long double w1 = wt * t1h * r.weight[static_cast<size_t>(k1)] * c.pred.eval(t1);
                integrate_piece(
                    acc, jf, jg, [&](long double s, ldvec& o) { v_fill(c, 2, ca, s, o); },
                    [&](long double s, ldvec& o) { v_fill(c, 2, cb, s, o); }, 0.0L,
                    1.0L - t - t1, w1);
            }
        }
    }
    return acc;
}

void check_component_args(int i, int j, int na, int nb) {
    if (i < 1 || i > 3 || j < 1 || j > 3)
        throw ValidationError("sigma component indices must lie in 1..3");
    if (na < 0 || nb < 0) throw ValidationError("jet orders must be non-negative");
}

Jet2<long double> sigma_component_ld(int i, int j, const MollifierConfig& cfg, double a0,
                                     double b0, int na, int nb) {
    if (i > j) return sigma_component_ld(j, i, cfg, b0, a0, nb, na).transposed();
    QuadCtx c = make_ctx(cfg);
    auto v1a = [&](long double s, ldvec& o) { v_fill(c, 1, a0, s, o); };
    auto v1b = [&](long double s, ldvec& o) { v_fill(c, 1, b0, s, o); };
    auto v2a = [&](long double s, ldvec& o) { v_fill(c, 2, a0, s, o); };
    auto v2b = [&](long double s, ldvec& o) { v_fill(c, 2, b0, s, o); };
    auto w2a = [&](long double s, ldvec& o) { w2_fill(c, a0, s, o); };
    auto w2b = [&](long double s, ldvec& o) { w2_fill(c, b0, s, o); };
    auto pred = [&](long double t) { return c.has_p ? c.pred.eval(t) : 0.0L; };
    switch (i * 10 + j) {
        case 11:
            return family_a(v1a, v1b, na, nb, a0, b0);
        case 12:
            return family_a(v1a, w2b, na, nb, a0, b0).scaled(-1.0L);
        case 22: {
            Jet2<long double> r = family_a(w2a, w2b, na, nb, a0, b0);
            return cfg.paper_literal_signs ? r.scaled(-1.0L) : r;
        }
        case 13:
            if (!c.has_p) return Jet2<long double>(na, nb, a0, b0);
            return family_b(v1a, v2b, pred, na, nb, a0, b0);
        case 23:
            if (!c.has_p) return Jet2<long double>(na, nb, a0, b0);
            return family_b(w2a, v2b, pred, na, nb, a0, b0).scaled(-1.0L);
        case 33: {
            if (!c.has_p) return Jet2<long double>(na, nb, a0, b0);
            auto omega = [&](long double t) {
                long double pr = c.pred.eval(t);
                return t * pr * pr;  // P(t)^2 / t
            };
            Jet2<long double> r = family_b(v2a, v2b, omega, na, nb, a0, b0);
            return r + sigma33_tail(c, a0, b0, na, nb);
        }
        default:
            throw std::logic_error("unreachable sigma dispatch");
    }
}

Jet2<double> round_jet(const Jet2<long double>& j) {
    return j.map<double>([](const long double& v) { return static_cast<double>(v); });
}

}  // namespace

std::vector<double> v_uni_quad(int i, const MollifierConfig& cfg, double center, double t,
                               int order) {
    if (i != 1 && i != 2) throw ValidationError("V_i kernel index must be 1 or 2");
    if (order < 0) throw ValidationError("jet orders must be non-negative");
    QuadCtx c = make_ctx(cfg);
    ldvec tmp(static_cast<size_t>(order) + 1);
    v_fill(c, i, center, t, tmp);
    return std::vector<double>(tmp.begin(), tmp.end());
}

std::vector<double> w2_uni_quad(const MollifierConfig& cfg, double center, double t, int order) {
    if (order < 0) throw ValidationError("jet orders must be non-negative");
    QuadCtx c = make_ctx(cfg);
    ldvec tmp(static_cast<size_t>(order) + 1);
    w2_fill(c, center, t, tmp);
    return std::vector<double>(tmp.begin(), tmp.end());
}

Jet2<double> v_jet_quad(int i, const MollifierConfig& cfg, int variable, double t, double a0,
                        double b0, int na, int nb) {
    if (variable != 0 && variable != 1) throw ValidationError("jet variable must be 0 or 1");
    Jet2<double> r(na, nb, a0, b0);
    std::vector<double> u =
        v_uni_quad(i, cfg, variable == 0 ? a0 : b0, t, variable == 0 ? na : nb);
    for (size_t k = 0; k < u.size(); ++k)
        (variable == 0 ? r.at(static_cast<int>(k), 0) : r.at(0, static_cast<int>(k))) = u[k];
    return r;
}

Jet2<double> w2_jet_quad(const MollifierConfig& cfg, int variable, double t, double a0, double b0,
                         int na, int nb) {
    if (variable != 0 && variable != 1) throw ValidationError("jet variable must be 0 or 1");
    Jet2<double> r(na, nb, a0, b0);
    std::vector<double> u = w2_uni_quad(cfg, variable == 0 ? a0 : b0, t, variable == 0 ? na : nb);
    for (size_t k = 0; k < u.size(); ++k)
        (variable == 0 ? r.at(static_cast<int>(k), 0) : r.at(0, static_cast<int>(k))) = u[k];
    return r;
}

Jet2<double> sigma_component_quad(int i, int j, const MollifierConfig& cfg, double a0, double b0,
                                  int na, int nb) {
    check_component_args(i, j, na, nb);
    cfg.validate();
    return round_jet(sigma_component_ld(i, j, cfg, a0, b0, na, nb));
}

Jet2<double> s_total_quad(const MollifierConfig& cfg, double a0, double b0, int na, int nb) {
    check_component_args(1, 1, na, nb);
    cfg.validate();
    Jet2<long double> acc(na, nb, a0, b0);
    bool symmetric = (a0 == b0) && (na == nb);
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) {
            Jet2<long double> s = sigma_component_ld(i, j, cfg, a0, b0, na, nb);
            acc += s;
            if (i < j)
                acc += symmetric ? s.transposed() : sigma_component_ld(j, i, cfg, a0, b0, na, nb);
        }
    return round_jet(acc);
}

}  // namespace czp
