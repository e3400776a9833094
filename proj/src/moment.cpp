// Twisted-second-moment verification: composite-Simpson quadrature of
// |L(1/2+it, chi) B(1/2+it, chi)|^2 over [T, 2T] against the main-term
// formula.  The Simpson samples are embarrassingly parallel; determinism
// comes from writing every weighted sample into an index-ordered buffer and
// reducing with a pairwise sum, so the result is bit-identical for any
// thread count.

#include "czp/moment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

#include "hurwitz_internal.hpp"

namespace czp {

namespace {

constexpr double kTwoPi = 6.2831853071795864769;

int64_t totient(int64_t q) {
    int64_t result = q, n = q;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        result -= result / p;
        while (n % p == 0) n /= p;
    }
    if (n > 1) result -= result / n;
    return result;
}

// Simpson sample grid on [x0, x0 + len]: an even number of intervals of
// width <= step.
struct SimpsonGrid {
    double x0 = 0, dx = 0;
    int intervals = 0;  // even
    int points() const { return intervals + 1; }
    double at(int k) const { return x0 + dx * k; }
    double weight(int k) const {
        if (k == 0 || k == intervals) return 1.0;
        return (k % 2) ? 4.0 : 2.0;
    }
};

SimpsonGrid make_grid(double x0, double len, double step) {
    SimpsonGrid g;
    g.x0 = x0;
    int m = static_cast<int>(std::ceil(len / step));
    if (m < 2) m = 2;
    if (m % 2) ++m;
    g.intervals = m;
    g.dx = len / m;
    return g;
}

// |L(1/2+it) B(1/2+it)|^2 evaluator with per-residue Euler-Maclaurin head
// tables built once for the largest height in play.
struct IntegrandEval {
    struct Residue {
        cplx chi;
        detail::EmTables tb;
    };
    std::vector<Residue> residues;
    struct BTerm {
        cplx c;     // a(n) chi(n) n^{-1/2}
        double lg;  // log n
    };
    std::vector<BTerm> bterms;
    double q_scale = 1;  // q^{-1/2} = |q^{-s}| on the critical line
    double mult = 1.3;
    int K = 12;

    IntegrandEval(const MomentConfig& mc, const DirichletCharacter& chi,
                  const std::vector<double>& a, double t_max) {
        mult = mc.em_n_multiplier;
        K = mc.em_bernoulli_terms;
        int n_cap = detail::em_head_length(t_max, mult);
        for (int64_t r = 1; r <= chi.q; ++r) {
            if (chi.is_zero_at(r)) continue;
            Residue res;
            res.chi = chi.value(r);
            res.tb.build(static_cast<double>(r) / static_cast<double>(chi.q), 0.5, n_cap);
            residues.push_back(std::move(res));
        }
        for (size_t n = 1; n < a.size(); ++n) {
            if (a[n] == 0.0 || chi.is_zero_at(static_cast<int64_t>(n))) continue;
            double dn = static_cast<double>(n);
            bterms.push_back(
                {a[n] * chi.value(static_cast<int64_t>(n)) / std::sqrt(dn), std::log(dn)});
        }
        q_scale = 1.0 / std::sqrt(static_cast<double>(chi.q));
    }

    // terms touched per sample at height t (for the cost estimate)
    double cost_per_sample(double t) const {
        return static_cast<double>(residues.size()) * detail::em_head_length(t, mult) +
               static_cast<double>(bterms.size()) + 16.0 * K;
    }

    double operator()(double t) const {
        cplx s(0.5, t);
        int N = detail::em_head_length(t, mult);
        cplx lsum(0.0, 0.0);
        for (const Residue& res : residues)
            lsum += res.chi * (detail::em_head(res.tb, N, t) +
                               detail::em_tail(s, res.tb.lg[static_cast<size_t>(N)], K, false));
        double l2 = std::norm(lsum) * q_scale * q_scale;
        cplx b(1.0, 0.0);
        if (!bterms.empty()) {
            b = cplx(0.0, 0.0);
            for (const BTerm& bt : bterms) b += bt.c * std::polar(1.0, -t * bt.lg);
        }
        return l2 * std::norm(b);
    }
};

// Simpson value of eval over the grid; samples written to `f` (resized),
// reduction pairwise in index order.
double simpson(const IntegrandEval& eval, const SimpsonGrid& g, int threads,
               std::vector<double>& f) {
    int n = g.points();
    f.assign(static_cast<size_t>(n), 0.0);
    auto run = [&](int lo, int hi) {
        for (int k = lo; k < hi; ++k)
            f[static_cast<size_t>(k)] = g.weight(k) * eval(g.at(k)) * (g.dx / 3.0);
    };
    if (threads <= 1 || n < 64) {
        run(0, n);
    } else {
        std::vector<std::thread> pool;
        int chunk = (n + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            int lo = w * chunk, hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return pairwise_sum(f);
}

}  // namespace

void MomentConfig::validate() const {
    if (q < 1) throw ValidationError("moment modulus q must be >= 1");
    if (!(theta > 0.0) || !(theta < 1.0))
        throw ValidationError("moment theta must lie in (0, 1)");
    if (T.empty()) throw ValidationError("moment T list must be non-empty");
    for (double t : T)
        if (!(t >= 50.0)) throw ValidationError("moment endpoints require T >= 50");
    if (!(step > 0.0) || step > 0.5)
        throw ValidationError("quadrature step must lie in (0, 0.5]");
    if (!(em_n_multiplier >= 0.1) || !(em_n_multiplier <= 100.0))
        throw ValidationError("Euler-Maclaurin head multiplier must lie in [0.1, 100]");
    if (em_bernoulli_terms < 1 || em_bernoulli_terms > 12)
        throw ValidationError("Euler-Maclaurin Bernoulli depth must lie in 1..12");
    if (character_index < 0) throw ValidationError("character index must be >= 0");
    if (mollifier) mollifier->validate();
}

DirichletCharacter MomentConfig::character() const {
    std::vector<DirichletCharacter> prim;
    for (DirichletCharacter& chi : characters_mod(q))
        if (chi.is_primitive()) prim.push_back(std::move(chi));
    if (prim.empty())
        throw ValidationError("no primitive character mod q (q = 2 mod 4 has none)");
    if (character_index >= static_cast<int>(prim.size()))
        throw ValidationError("character index exceeds the number of primitive characters");
    return prim[static_cast<size_t>(character_index)];
}

int64_t MomentConfig::mollifier_length(double t_endpoint) const {
    if (!mollifier) return 1;  // B == 1
    int64_t y = static_cast<int64_t>(std::floor(std::pow(t_endpoint, theta)));
    return y < 1 ? 1 : y;
}

double twisted_pair_sum(const std::vector<double>& a, int64_t y, int64_t q, double c_log,
                        std::optional<bool> grouped_opt) {
    if (y < 1) throw ValidationError("pair sum requires y >= 1");
    if (a.size() < static_cast<size_t>(y) + 1)
        throw ValidationError("coefficient table shorter than y");
    std::vector<char> cop(static_cast<size_t>(y) + 1, 0);
    for (int64_t n = 1; n <= y; ++n) cop[static_cast<size_t>(n)] = (std::gcd(n, q) == 1);
    std::vector<double> lg(static_cast<size_t>(y) + 1, 0.0);
    for (int64_t n = 1; n <= y; ++n) lg[static_cast<size_t>(n)] = std::log(static_cast<double>(n));

    bool grouped = grouped_opt ? *grouped_opt : (y > 2000);
    if (!grouped) {
        // direct double loop; the bracket is c_log + 2 log g - log h - log k
        std::vector<double> rows;
        rows.reserve(static_cast<size_t>(y));
        for (int64_t h = 1; h <= y; ++h) {
            if (!cop[static_cast<size_t>(h)] || a[static_cast<size_t>(h)] == 0.0) continue;
            double row = 0.0;
            for (int64_t k = 1; k <= y; ++k) {
                if (!cop[static_cast<size_t>(k)] || a[static_cast<size_t>(k)] == 0.0) continue;
                int64_t g = std::gcd(h, k);
                double lcm = static_cast<double>(h / g) * static_cast<double>(k);
                double bracket = c_log + 2.0 * lg[static_cast<size_t>(g)] -
                                 lg[static_cast<size_t>(h)] - lg[static_cast<size_t>(k)];
                row += a[static_cast<size_t>(h)] * a[static_cast<size_t>(k)] / lcm * bracket;
            }
            rows.push_back(row);
        }
        return pairwise_sum(rows);
    }

    // Group by g = (h, k): with h = gm, k = gn, (m,n) = 1,
    //   [h,k] = g m n  and  (h,k)^2/(hk) = 1/(m n),
    // so the sum is  sum_g (1/g) sum_{(m,n)=1} f(m) f(n) (c_log - log m - log n)
    // with f(m) = a(gm)/m.  The coprimality is removed by a Moebius sieve:
    // with A0(d) = sum_{m' <= y/(gd)} a(g d m')/(d m') and A1 its log-weighted
    // twin, the inner sum is  sum_d mu(d) (c_log A0^2 - 2 A0 A1).
    SieveTables sv = build_sieve(y);
    std::vector<double> per_g;
    per_g.reserve(static_cast<size_t>(y));
    for (int64_t g = 1; g <= y; ++g) {
        if (!cop[static_cast<size_t>(g)]) continue;
        int64_t m_max = y / g;
        double inner = 0.0;
        for (int64_t d = 1; d <= m_max; ++d) {
            int mu = sv.mobius[static_cast<size_t>(d)];
            if (mu == 0 || !cop[static_cast<size_t>(d)]) continue;
            double a0 = 0.0, a1 = 0.0;
            for (int64_t u = d; u <= m_max; u += d) {
                if (!cop[static_cast<size_t>(u)]) continue;
                double av = a[static_cast<size_t>(g * u)];
                if (av == 0.0) continue;
                double f = av / static_cast<double>(u);
                a0 += f;
                a1 += f * lg[static_cast<size_t>(u)];
            }
            inner += mu * (c_log * a0 * a0 - 2.0 * a0 * a1);
        }
        per_g.push_back(inner / static_cast<double>(g));
    }
    return pairwise_sum(per_g);
}

double I_main(const MomentConfig& mc, double t_endpoint) {
    mc.validate();
    int64_t y = mc.mollifier_length(t_endpoint);
    std::vector<double> a;
    if (mc.mollifier)
        a = mollifier_coefficients(*mc.mollifier, y);
    else
        a = {0.0, 1.0};
    double c_log = std::log(t_endpoint * static_cast<double>(mc.q) / kTwoPi) +
                   2.0 * euler_gamma - 1.0 + c_q(mc.q) + 2.0 * std::log(2.0);
    double phi_ratio = static_cast<double>(totient(mc.q)) / static_cast<double>(mc.q);
    return t_endpoint * phi_ratio * twisted_pair_sum(a, y, mc.q, c_log);
}

double I_main(const MomentConfig& mc) { return I_main(mc, mc.T.at(0)); }

double I_numeric(const MomentConfig& mc, double t_endpoint, int threads,
                 std::vector<double>* partials, std::vector<std::string>* warnings) {
    mc.validate();
    if (threads < 1) throw ValidationError("thread count must be >= 1");
    DirichletCharacter chi = mc.character();
    int64_t y = mc.mollifier_length(t_endpoint);
    std::vector<double> a;
    if (mc.mollifier)
        a = mollifier_coefficients(*mc.mollifier, y);
    else
        a = {0.0, 1.0};
    IntegrandEval eval(mc, chi, a, 2.0 * t_endpoint);

    double samples = t_endpoint / mc.step + 8.0 * 3.0 + 2.0 * (100.0 / mc.step + 3.0);
    double estimate = samples * eval.cost_per_sample(2.0 * t_endpoint);
    if (estimate > 1e10)
        throw CapacityError("I_numeric cost estimate exceeds 1e10 term evaluations");

    // 8 equal subintervals, each integrated by its own composite Simpson
    // rule, so the reported partials are themselves proper integrals.
    std::vector<double> parts;
    std::vector<double> buf;
    for (int j = 0; j < 8; ++j) {
        double len = t_endpoint / 8.0;
        SimpsonGrid g = make_grid(t_endpoint + j * len, len, mc.step);
        parts.push_back(simpson(eval, g, threads, buf));
    }
    double total = pairwise_sum(parts);
    if (partials) *partials = parts;

    if (warnings) {
        double probe_len = std::min(50.0, t_endpoint);
        SimpsonGrid g1 = make_grid(t_endpoint, probe_len, mc.step);
        SimpsonGrid g2 = make_grid(t_endpoint, probe_len, mc.step / 2.0);
        double p1 = simpson(eval, g1, threads, buf);
        double p2 = simpson(eval, g2, threads, buf);
        double scale = std::max(std::abs(p2), 1e-300);
        if (std::abs(p1 - p2) > 0.01 * scale) {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "quadrature probe on [T, T+%.0f]: halving the step shifts the "
                          "partial by %.2f%% (> 1%%); decrease step",
                          probe_len, 100.0 * std::abs(p1 - p2) / scale);
            warnings->push_back(msg);
        }
    }
    return total;
}

double I_numeric(const MomentConfig& mc) { return I_numeric(mc, mc.T.at(0)); }

VerificationReport verify_report(const MomentConfig& mc, int threads) {
    mc.validate();
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.config = mc;
    for (double t_end : mc.T) {
        MomentPoint pt;
        pt.T = t_end;
        pt.I_numeric = I_numeric(mc, t_end, threads, &pt.partials, &rep.warnings);
        pt.I_main = I_main(mc, t_end);
        if (pt.I_main == 0.0)
            throw NumericDomainError("I_main vanished; the ratio I_numeric/I_main is undefined");
        pt.ratio = pt.I_numeric / pt.I_main;
        rep.points.push_back(std::move(pt));
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace czp
