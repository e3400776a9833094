#include "czp/levinson.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "czp/arith.hpp"

namespace czp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lambda_value(const MollifierConfig& cfg, Backend backend, int ord) {
    if (backend == Backend::exact) {
        Jet2<ExpNum> sn = s_total_exact(cfg, -cfg.R, -cfg.R, ord, ord);
        Jet2<ExpNum> sp = s_total_exact(cfg, cfg.R, cfg.R, ord, ord);
        return functional_value(sn, sp, cfg.q_poly, cfg.R, cfg.theta);
    }
    double r = to_double(cfg.R), th = to_double(cfg.theta);
    XPoly<double> qd = cfg.q_poly.map<double>([](const Rational& v) { return to_double(v); });
    Jet2<double> sn = s_total_quad(cfg, -r, -r, ord, ord);
    Jet2<double> sp = s_total_quad(cfg, r, r, ord, ord);
    return functional_value(sn, sp, qd, r, th);
}

int resolve_order(const MollifierConfig& cfg, int order_override) {
    int degq = cfg.q_degree();
    int ord = order_override < 0 ? degq : order_override;
    if (ord < degq)
        throw ValidationError("jet order " + std::to_string(ord) + " is below deg Q = " +
                              std::to_string(degq));
    if (ord > 32) throw ValidationError("jet order cap is 32");
    return ord;
}

// Flattening of the unfrozen parameter blocks into one coordinate vector,
// in the fixed order q_basis, p1_basis, p2_monomials, p_monomials, R.
struct Packer {
    ConstrainedParams base;
    bool fq, fp1, fp2, fp, fr;

    size_t dim() const {
        return (fq ? base.q_basis.size() : 0) + (fp1 ? base.p1_basis.size() : 0) +
               (fp2 ? base.p2_monomials.size() : 0) + (fp ? base.p_monomials.size() : 0) +
               (fr ? 1 : 0);
    }
    std::vector<double> pack() const {
        std::vector<double> x;
        x.reserve(dim());
        auto add = [&](const std::vector<double>& v, bool f) {
            if (f) x.insert(x.end(), v.begin(), v.end());
        };
        add(base.q_basis, fq);
        add(base.p1_basis, fp1);
        add(base.p2_monomials, fp2);
        add(base.p_monomials, fp);
        if (fr) x.push_back(base.R);
        return x;
    }
    ConstrainedParams unpack(const std::vector<double>& x) const {
        ConstrainedParams p = base;
        size_t k = 0;
        auto take = [&](std::vector<double>& v, bool f) {
            if (f)
                for (double& e : v) e = x[k++];
        };
        take(p.q_basis, fq);
        take(p.p1_basis, fp1);
        take(p.p2_monomials, fp2);
        take(p.p_monomials, fp);
        if (fr) p.R = x[k++];
        return p;
    }
};

struct Objective {
    const Packer& pk;
    const OptimizeSettings& st;
    int64_t remaining;
    double best_val = kNegInf;
    std::vector<double> best_x;

    bool exhausted() const { return remaining <= 0; }

    double operator()(const std::vector<double>& x) {
        --remaining;
        double v = kNegInf;
        try {
            MollifierConfig cfg = decode_params(pk.unpack(x), st.theta, st.simple_zeros_mode,
                                                st.paper_literal_signs);
            double lambda = lambda_value(cfg, st.backend, resolve_order(cfg, st.order_override));
            if (lambda > 0) v = 1.0 - std::log(lambda) / to_double(cfg.R);
        } catch (const ValidationError&) {
        } catch (const NumericDomainError&) {
        } catch (const std::domain_error&) {
        }
        if (v > best_val) {
            best_val = v;
            best_x = x;
        }
        return v;
    }
};

// One Nelder-Mead descent phase (maximization) from x0 with the given
// initial displacement scale; runs until its evaluation allowance or the
// simplex degenerates.  Deterministic: ties in the vertex ordering are
// broken by index.
void nelder_mead_phase(Objective& obj, std::vector<double> x0, double scale, std::mt19937_64& rng,
                       int64_t allowance) {
    size_t n = x0.size();
    int64_t stop_at = obj.remaining - allowance;
    std::vector<std::vector<double>> pts;
    std::vector<double> val;
    pts.push_back(x0);
    for (size_t i = 0; i < n; ++i) {
        std::vector<double> p = x0;
        p[i] += (rng() & 1 ? scale : -scale);
        pts.push_back(std::move(p));
    }
    for (auto& p : pts) {
        if (obj.remaining <= stop_at || obj.exhausted()) return;
        val.push_back(obj(p));
    }

    std::vector<size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    auto order = [&] {
        std::stable_sort(idx.begin(), idx.end(),
                         [&](size_t a, size_t b) { return val[a] > val[b]; });
    };
    auto centroid_excl_worst = [&] {
        std::vector<double> c(n, 0.0);
        for (size_t r = 0; r + 1 < idx.size(); ++r)
            for (size_t i = 0; i < n; ++i) c[i] += pts[idx[r]][i];
        for (double& v : c) v /= static_cast<double>(n);
        return c;
    };
    auto blend = [&](const std::vector<double>& c, const std::vector<double>& p, double t) {
        std::vector<double> r(n);
        for (size_t i = 0; i < n; ++i) r[i] = c[i] + t * (p[i] - c[i]);
        return r;
    };

    while (obj.remaining > stop_at && !obj.exhausted()) {
        order();
        double spread = val[idx.front()] - val[idx.back()];
        if (std::isfinite(spread) && spread < 1e-13) break;
        size_t worst = idx.back();
        std::vector<double> c = centroid_excl_worst();
        std::vector<double> xr = blend(c, pts[worst], -1.0);  // reflection
        double fr = obj(xr);
        if (fr > val[idx.front()]) {
            if (obj.remaining > stop_at && !obj.exhausted()) {
                std::vector<double> xe = blend(c, pts[worst], -2.0);  // expansion
                double fe = obj(xe);
                if (fe > fr) {
                    pts[worst] = std::move(xe);
                    val[worst] = fe;
                    continue;
                }
            }
            pts[worst] = std::move(xr);
            val[worst] = fr;
        } else if (fr > val[idx[idx.size() - 2]]) {
            pts[worst] = std::move(xr);
            val[worst] = fr;
        } else {
            if (obj.remaining <= stop_at || obj.exhausted()) break;
            bool outside = fr > val[worst];
            std::vector<double> xc =
                outside ? blend(c, xr, 0.5) : blend(c, pts[worst], 0.5);  // contraction
            double fc = obj(xc);
            if (fc > std::max(fr, val[worst])) {
                pts[worst] = std::move(xc);
                val[worst] = fc;
            } else {  // shrink toward the best vertex
                const std::vector<double> best = pts[idx.front()];
                for (size_t r = 1; r < idx.size(); ++r) {
                    if (obj.remaining <= stop_at || obj.exhausted()) return;
                    pts[idx[r]] = blend(best, pts[idx[r]], 0.5);
                    val[idx[r]] = obj(pts[idx[r]]);
                }
            }
        }
    }
}

}  // namespace

double functional_value(const Jet2<ExpNum>& s_neg, const Jet2<ExpNum>& s_pos, const RPoly& q_poly,
                        const Rational& r_radius, const Rational& theta) {
    int na = s_neg.order_a(), nb = s_neg.order_b();
    Rational d00 = Rational(-2) * theta * r_radius;
    if (std::fabs(to_double(d00)) < 1e-9)
        throw NumericDomainError("theta*(a+b) vanishes at the evaluation center a = b = -R");
    double ca = to_double(-r_radius);
    Jet2<ExpNum> e = jet_exp_linear<ExpNum, Rational>(Rational(-1), Rational(-1), Rational(1),
                                                      -r_radius, -r_radius, na, nb, ca, ca);
    Jet2<ExpNum> num = s_neg.transposed() - e * s_pos.arg_negated(ca, ca);
    Jet2<ExpNum> den(na, nb, ca, ca);
    den.at(0, 0) = ExpNum(d00);
    if (na >= 1) den.at(1, 0) = ExpNum(theta);
    if (nb >= 1) den.at(0, 1) = ExpNum(theta);
    return to_double(apply_operator(q_poly, q_poly, num / den));
}

double functional_value(const Jet2<double>& s_neg, const Jet2<double>& s_pos,
                        const XPoly<double>& q_poly, double r_radius, double theta) {
    int na = s_neg.order_a(), nb = s_neg.order_b();
    double d00 = -2.0 * theta * r_radius;
    if (std::fabs(d00) < 1e-9)
        throw NumericDomainError("theta*(a+b) vanishes at the evaluation center a = b = -R");
    double ca = -r_radius;
    Jet2<double> e =
        jet_exp_linear<double, double>(-1.0, -1.0, 1.0, -r_radius, -r_radius, na, nb, ca, ca);
    Jet2<double> num = s_neg.transposed() - e * s_pos.arg_negated(ca, ca);
    Jet2<double> den(na, nb, ca, ca);
    den.at(0, 0) = d00;
    if (na >= 1) den.at(1, 0) = theta;
    if (nb >= 1) den.at(0, 1) = theta;
    return apply_operator(q_poly, q_poly, num / den);
}

BoundReport kappa_lower_bound(const MollifierConfig& cfg, Backend backend, int order_override) {
    auto t0 = std::chrono::steady_clock::now();
    cfg.validate();
    int ord = resolve_order(cfg, order_override);
    double lambda = lambda_value(cfg, backend, ord);
    if (!(lambda > 0))
        throw NumericDomainError(
            "Levinson functional is non-positive (Lambda = " + std::to_string(lambda) +
            "); configuration is outside the Levinson regime");
    BoundReport rep;
    rep.functional_value = lambda;
    rep.kappa_lower_bound = 1.0 - std::log(lambda) / to_double(cfg.R);
    rep.backend = backend == Backend::exact ? "exact" : "quadrature";
    rep.jet_order_a = ord;
    rep.jet_order_b = ord;
    rep.config = cfg;
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::pair<ConstrainedParams, BoundReport> optimize_mollifier(const ConstrainedParams& start,
                                                             const OptimizeSettings& settings,
                                                             int64_t budget, uint64_t seed) {
    if (budget < 0) throw ValidationError("optimizer budget must be non-negative");
    Packer pk{start, !settings.freeze_q, !settings.freeze_p1, !settings.freeze_p2,
              !settings.freeze_p, !settings.freeze_r};
    std::vector<double> best = pk.pack();
    if (budget > 0 && pk.dim() > 0) {
        Objective obj{pk, settings, budget};
        std::mt19937_64 rng(seed);
        // Main descent, then one restart from the best point with a tighter
        // simplex to polish (the classic cure for NM stagnation).
        int64_t phase1 = std::max<int64_t>(1, (budget * 3) / 5);
        nelder_mead_phase(obj, best, 0.1, rng, phase1);
        if (!obj.best_x.empty() && obj.best_val > kNegInf)
            nelder_mead_phase(obj, obj.best_x, 0.02, rng, obj.remaining);
        if (obj.best_x.empty() || obj.best_val == kNegInf)
            throw NumericDomainError(
                "optimization failed: the functional was non-positive at every sampled point");
        best = obj.best_x;
    }
    ConstrainedParams out = pk.unpack(best);
    MollifierConfig cfg = decode_params(out, settings.theta, settings.simple_zeros_mode,
                                        settings.paper_literal_signs);
    BoundReport rep = kappa_lower_bound(cfg, settings.backend, settings.order_override);
    return {out, rep};
}

}  // namespace czp
