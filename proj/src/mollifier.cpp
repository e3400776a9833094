#include "czp/mollifier.hpp"

#include <cmath>
#include <string>

namespace czp {

namespace {

std::string rat_str(const Rational& v) { return v.str(); }

// int_0^x (u(1-u))^k du
RPoly q_basis_poly(int k) {
    RPoly base(std::vector<Rational>{Rational(0), Rational(1), Rational(-1)});  // u - u^2
    RPoly pw = RPoly::constant(Rational(1));
    for (int i = 0; i < k; ++i) pw = pw * base;
    return pw.antiderivative();
}

// x^k (1 - x) = x^k - x^{k+1}
RPoly p1_basis_poly(int k) {
    return RPoly::monomial(Rational(1), static_cast<size_t>(k)) -
           RPoly::monomial(Rational(1), static_cast<size_t>(k) + 1);
}

}  // namespace

void MollifierConfig::validate() const {
    Rational zero(0), one(1);
    if (p1.eval(zero) != zero)
        throw ValidationError("P1(0) = " + rat_str(p1.eval(zero)) + ", must be 0");
    if (p1.eval(one) != one)
        throw ValidationError("P1(1) = " + rat_str(p1.eval(one)) + ", must be 1");
    if (p2.eval(zero) != zero)
        throw ValidationError("P2(0) = " + rat_str(p2.eval(zero)) + ", must be 0");
    if (p.eval(zero) != zero)
        throw ValidationError("P(0) = " + rat_str(p.eval(zero)) + ", must be 0");
    if (q_poly.eval(zero) != one)
        throw ValidationError("Q(0) = " + rat_str(q_poly.eval(zero)) + ", must be 1");
    RPoly d = q_poly.derivative();
    if (!(d == d.compose_affine(Rational(-1), Rational(1))))
        throw ValidationError("Q'(x) = Q'(1-x) fails: Q' is not symmetric about 1/2");
    if (simple_zeros_mode && q_degree() != 1)
        throw ValidationError("simple_zeros_mode requires deg Q = 1, got deg Q = " +
                              std::to_string(q_degree()));
    if (!(R > 0)) throw ValidationError("R = " + rat_str(R) + ", must be positive");
    if (!(theta > 0 && theta < 1))
        throw ValidationError("theta = " + rat_str(theta) + ", must lie in (0,1)");
}

MollifierConfig decode_params(const std::vector<Rational>& q_basis,
                              const std::vector<Rational>& p1_basis,
                              const std::vector<Rational>& p2_monomials,
                              const std::vector<Rational>& p_monomials, const Rational& R,
                              const Rational& theta, bool simple_zeros_mode,
                              bool paper_literal_signs) {
    MollifierConfig cfg;
    cfg.q_poly = RPoly::constant(Rational(1));
    for (size_t k = 0; k < q_basis.size(); ++k)
        cfg.q_poly += q_basis_poly(static_cast<int>(k)).scaled(q_basis[k]);
    cfg.p1 = RPoly::monomial(Rational(1), 1);
    for (size_t k = 0; k < p1_basis.size(); ++k)
        cfg.p1 += p1_basis_poly(static_cast<int>(k) + 1).scaled(p1_basis[k]);
    for (size_t k = 0; k < p2_monomials.size(); ++k)
        cfg.p2 += RPoly::monomial(p2_monomials[k], k + 1);
    for (size_t k = 0; k < p_monomials.size(); ++k)
        cfg.p += RPoly::monomial(p_monomials[k], k + 1);
    cfg.R = R;
    cfg.theta = theta;
    cfg.simple_zeros_mode = simple_zeros_mode;
    cfg.paper_literal_signs = paper_literal_signs;
    cfg.validate();
    return cfg;
}

MollifierConfig decode_params(const ConstrainedParams& cp, const Rational& theta,
                              bool simple_zeros_mode, bool paper_literal_signs) {
    auto lift = [](const std::vector<double>& v) {
        std::vector<Rational> r;
        r.reserve(v.size());
        for (double x : v) r.emplace_back(x);  // dyadic, exact
        return r;
    };
    return decode_params(lift(cp.q_basis), lift(cp.p1_basis), lift(cp.p2_monomials),
                         lift(cp.p_monomials), Rational(cp.R), theta, simple_zeros_mode,
                         paper_literal_signs);
}

RationalBasis encode_params_exact(const MollifierConfig& cfg) {
    RationalBasis out;

    // Q: peel Q' = sum g_k (x(1-x))^k from the top degree down; (x(1-x))^k
    // has degree 2k and leading coefficient (-1)^k.
    if (cfg.q_poly.eval(Rational(0)) != Rational(1))
        throw ValidationError("encode: Q(0) != 1");
    RPoly d = cfg.q_poly.derivative();
    std::vector<Rational> g;
    while (!d.is_zero()) {
        int n = d.degree();
        if (n % 2 != 0) throw ValidationError("encode: Q' outside the (x(1-x))^k span");
        int k = n / 2;
        Rational gk = d.coeff(static_cast<size_t>(n));
        if (k % 2 != 0) gk = -gk;
        if (static_cast<size_t>(k) >= g.size()) g.resize(static_cast<size_t>(k) + 1, Rational(0));
        g[static_cast<size_t>(k)] = gk;
        RPoly base(std::vector<Rational>{Rational(0), Rational(1), Rational(-1)});
        RPoly pw = RPoly::constant(gk);
        for (int i = 0; i < k; ++i) pw = pw * base;
        d -= pw;
        if (d.degree() >= n) throw ValidationError("encode: Q' outside the (x(1-x))^k span");
    }
    out.q_basis = std::move(g);

    // P1: r = P1 - x = sum_{k>=1} d_k (x^k - x^{k+1}) gives the recurrence
    // d_k = r_k + d_{k-1} with the top coefficient as consistency check.
    RPoly r = cfg.p1 - RPoly::monomial(Rational(1), 1);
    if (!r.is_zero()) {
        if (r.coeff(0) != Rational(0)) throw ValidationError("encode: P1(0) != 0");
        int top = r.degree();
        std::vector<Rational> dcoef(static_cast<size_t>(top), Rational(0));  // d_1..d_{top-1}
        Rational prev(0);
        for (int k = 1; k < top; ++k) {
            prev = r.coeff(static_cast<size_t>(k)) + prev;
            dcoef[static_cast<size_t>(k - 1)] = prev;
        }
        if (r.coeff(static_cast<size_t>(top)) != -prev)
            throw ValidationError("encode: P1 outside the x + x^k(1-x) span");
        dcoef.resize(static_cast<size_t>(top - 1));
        out.p1_basis = std::move(dcoef);
    }

    // P2, P: monomial coefficients from degree 1 up.
    auto monomials = [](const RPoly& poly, const char* name) {
        if (!poly.is_zero() && poly.coeff(0) != Rational(0))
            throw ValidationError(std::string("encode: ") + name + "(0) != 0");
        std::vector<Rational> m;
        for (int k = 1; k <= poly.degree(); ++k) m.push_back(poly.coeff(static_cast<size_t>(k)));
        return m;
    };
    out.p2_monomials = monomials(cfg.p2, "P2");
    out.p_monomials = monomials(cfg.p, "P");
    return out;
}

ConstrainedParams encode_params(const MollifierConfig& cfg) {
    RationalBasis rb = encode_params_exact(cfg);
    ConstrainedParams cp;
    auto drop = [](const std::vector<Rational>& v) {
        std::vector<double> out;
        out.reserve(v.size());
        for (const auto& x : v) out.push_back(to_double(x));
        return out;
    };
    cp.q_basis = drop(rb.q_basis);
    cp.p1_basis = drop(rb.p1_basis);
    cp.p2_monomials = drop(rb.p2_monomials);
    cp.p_monomials = drop(rb.p_monomials);
    cp.R = to_double(cfg.R);
    return cp;
}

std::vector<double> mollifier_coefficients(const MollifierConfig& cfg, int64_t y) {
    if (y < 1) throw ValidationError("mollifier_coefficients requires y >= 1");
    std::vector<double> a(static_cast<size_t>(y) + 1, 0.0);
    auto to_d = [](const Rational& v) { return to_double(v); };
    XPoly<double> p1 = cfg.p1.map<double>(to_d);
    XPoly<double> p2 = cfg.p2.map<double>(to_d);
    XPoly<double> p = cfg.p.map<double>(to_d);
    a[1] = p1.eval(1.0);  // x_1 = 1 for every y, including y = 1
    if (y == 1) return a;

    SieveTables t = build_sieve(y);
    double logy = std::log(static_cast<double>(y));
    // P(log p / log y) for primes below the cutoff, decided exactly:
    // p <= y^{3/4}  <=>  p^4 <= y^3.
    std::vector<double> prime_weight(static_cast<size_t>(y) + 1, 0.0);
    for (int64_t pr : t.primes) {
        __int128 p4 = (__int128)pr * pr * pr * pr;
        __int128 y3 = (__int128)y * y * y;
        if (p4 <= y3) prime_weight[static_cast<size_t>(pr)] = p.eval(std::log((double)pr) / logy);
    }
    for (int64_t n = 2; n <= y; ++n) {
        int mu = t.mobius[static_cast<size_t>(n)];
        if (mu == 0) continue;
        double x = 1.0 - std::log(static_cast<double>(n)) / logy;
        double ps = 0.0;
        for (int64_t pr : t.prime_factors(n)) ps += prime_weight[static_cast<size_t>(pr)];
        a[static_cast<size_t>(n)] = mu * (p1.eval(x) + p2.eval(x) * ps);
    }
    return a;
}

}  // namespace czp
