// ExpPoly: finite sums  f(x) = sum_g e^{g x} p_g(x)  with rational
// frequencies g and polynomial parts over ExpNum.
//
// This family is closed under every operation the exact main-term
// evaluation performs: ring arithmetic, antiderivatives (integration by
// parts in closed form), affine substitution x -> alpha*x + beta, and the
// convolutions  int_0^x f(u) h(x-u) du  /  int_{u0}^{u1} f(u) h(s-u) du
// with polynomial h.  Frequencies that actually occur are 0, -a0*theta and
// sums/negations thereof (a0 = +-R), plus the shifts that affine
// substitution introduces into the constant parts.

#pragma once

#include "czp/expnum.hpp"
#include "czp/poly.hpp"
#include "czp/rat.hpp"

#include <map>

namespace czp {

using EPolyPart = XPoly<ExpNum>;

class ExpPoly {
  public:
    ExpPoly() = default;
    explicit ExpPoly(EPolyPart zero_freq_part) {
        add_part(Rational(0), std::move(zero_freq_part));
    }
    ExpPoly(const Rational& freq, EPolyPart part) { add_part(freq, std::move(part)); }

    static ExpPoly constant(const ExpNum& v) { return ExpPoly(EPolyPart::constant(v)); }

    bool is_zero() const { return parts_.empty(); }
    const std::map<Rational, EPolyPart>& parts() const { return parts_; }

    ExpPoly& operator+=(const ExpPoly& o) {
        for (const auto& [g, p] : o.parts_) add_part(g, p);
        return *this;
    }
    ExpPoly& operator-=(const ExpPoly& o) {
        for (const auto& [g, p] : o.parts_) add_part(g, -p);
        return *this;
    }
    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
    ExpPoly operator-() const {
        ExpPoly r;
        for (const auto& [g, p] : parts_) r.parts_.emplace(g, -p);
        return r;
    }

    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
        ExpPoly r;
        for (const auto& [g1, p1] : a.parts_)
            for (const auto& [g2, p2] : b.parts_) r.add_part(g1 + g2, p1 * p2);
        return r;
    }

    ExpPoly scaled(const ExpNum& s) const {
        ExpPoly r;
        for (const auto& [g, p] : parts_) r.add_part(g, p.scaled(s));
        return r;
    }

    // f(x) evaluated at the rational point x0, exactly.
    ExpNum eval(const Rational& x0) const {
        ExpNum acc;
        ExpNum x(x0);
        for (const auto& [g, p] : parts_) acc += ExpNum::exp_of(g * x0) * p.eval(x);
        return acc;
    }

    // A(x) = int_0^x f(u) du.  For a term e^{g u} p(u) with g != 0 the
    // antiderivative is e^{g x} q(x) with q = sum_k (-1)^k p^{(k)} / g^{k+1};
    // subtracting its value at 0 keeps A(0) = 0.
    ExpPoly antiderivative_from_zero() const {
        ExpPoly out;
        for (const auto& [g, p] : parts_) {
            if (g == 0) {
                out.add_part(Rational(0), p.antiderivative());
            } else {
                ExpNum inv_g = ExpNum(Rational(1) / g);
                EPolyPart q;
                EPolyPart d = p;
                ExpNum scale = inv_g;
                int sign = 1;
                while (!d.is_zero()) {
                    q += d.scaled(sign > 0 ? scale : -scale);
                    d = d.derivative();
                    scale = scale * inv_g;
                    sign = -sign;
                }
                out.add_part(g, q);
                out.add_part(Rational(0), EPolyPart::constant(-q.coeff(0)));
            }
        }
        return out;
    }

    // int_{x0}^{x1} f, exactly.
    ExpNum integrate(const Rational& x0, const Rational& x1) const {
        ExpPoly a = antiderivative_from_zero();
        return a.eval(x1) - a.eval(x0);
    }

    // f(alpha*x + beta) for rational alpha, beta:
    // e^{g(alpha x + beta)} p(alpha x + beta) has frequency g*alpha and the
    // constant e^{g beta} folds into the coefficients.
    ExpPoly compose_affine(const Rational& alpha, const Rational& beta) const {
        ExpPoly r;
        for (const auto& [g, p] : parts_) {
            EPolyPart q = p.compose_affine(ExpNum(alpha), ExpNum(beta));
            r.add_part(g * alpha, q.scaled(ExpNum::exp_of(g * beta)));
        }
        return r;
    }

  private:
    void add_part(const Rational& g, EPolyPart p) {
        if (p.is_zero()) return;
        auto it = parts_.find(g);
        if (it == parts_.end()) {
            parts_.emplace(g, std::move(p));
        } else {
            it->second += p;
            if (it->second.is_zero()) parts_.erase(it);
        }
    }

    std::map<Rational, EPolyPart> parts_;
};

inline ExpPoly operator*(const ExpPoly& f, const EPolyPart& h) {
    return f * ExpPoly(h);
}

// K(x) = int_0^x f(u) h(x-u) du with polynomial h: binomial expansion of
// h(x-u) reduces it to antiderivatives of u^i f(u), all exact.
inline ExpPoly convolve_from_zero(const ExpPoly& f, const EPolyPart& h) {
    ExpPoly out;
    if (f.is_zero() || h.is_zero()) return out;
    std::vector<ExpPoly> F;  // F_i(x) = int_0^x u^i f(u) du
    for (int i = 0; i <= h.degree(); ++i)
        F.push_back((f * EPolyPart::monomial(ExpNum(1), static_cast<size_t>(i)))
                        .antiderivative_from_zero());
    for (int k = 0; k <= h.degree(); ++k) {
        if (h.coeff(static_cast<size_t>(k)).is_zero()) continue;
        ExpNum binom(1);
        for (int i = 0; i <= k; ++i) {
            ExpNum sign = (i % 2 == 0) ? ExpNum(1) : ExpNum(-1);
            ExpNum c = h.coeff(static_cast<size_t>(k)) * binom * sign;
            out += F[static_cast<size_t>(i)] *
                   EPolyPart::monomial(c, static_cast<size_t>(k - i));
            binom = binom * ExpNum(k - i) / ExpNum(i + 1);
        }
    }
    return out;
}

// T(s) = int_{u0}^{u1} f(u) h(s-u) du with polynomial h and fixed rational
// limits: each int u^i f(u) du is an ExpNum constant, so T is a polynomial
// in s over ExpNum.
inline ExpPoly convolve_fixed_range(const ExpPoly& f, const EPolyPart& h, const Rational& u0,
                                    const Rational& u1) {
    ExpPoly out;
    if (f.is_zero() || h.is_zero()) return out;
    std::vector<ExpNum> M;  // M_i = int_{u0}^{u1} u^i f(u) du
    for (int i = 0; i <= h.degree(); ++i)
        M.push_back(
            (f * EPolyPart::monomial(ExpNum(1), static_cast<size_t>(i))).integrate(u0, u1));
    EPolyPart poly;
    for (int k = 0; k <= h.degree(); ++k) {
        if (h.coeff(static_cast<size_t>(k)).is_zero()) continue;
        ExpNum binom(1);
        for (int i = 0; i <= k; ++i) {
            ExpNum sign = (i % 2 == 0) ? ExpNum(1) : ExpNum(-1);
            poly += EPolyPart::monomial(
                h.coeff(static_cast<size_t>(k)) * binom * sign * M[static_cast<size_t>(i)],
                static_cast<size_t>(k - i));
            binom = binom * ExpNum(k - i) / ExpNum(i + 1);
        }
    }
    out += ExpPoly(poly);
    return out;
}

}  // namespace czp
