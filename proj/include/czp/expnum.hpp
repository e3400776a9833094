// ExpNum: a finite sum  sum_i c_i * e^{r_i}  with c_i, r_i rational.
//
// This is the scalar ring the exact backend computes in.  The main-term
// integrands are polynomials times exp(g*u) with rational g (g = -a0*theta
// at the evaluation centers a0 = +-R), so every definite integral that the
// Levinson functional needs has a closed form whose constants live exactly
// in this ring: rationals, e^{g*3/4}, e^{2R}, and products thereof.
//
// Addition/multiplication are exact.  Division is supported only by a
// single-term ExpNum (c * e^r); that is all the pipeline ever divides by
// (the jet of theta*(a+b) has rational coefficients).  Conversion to double
// happens once, at reporting time.

#pragma once

#include "czp/rat.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace czp {

class ExpNum {
  public:
    ExpNum() = default;
    ExpNum(int v) { add_term(Rational(v), Rational(0)); }
    ExpNum(const Rational& v) { add_term(v, Rational(0)); }
    ExpNum(const Rational& coeff, const Rational& exponent) { add_term(coeff, exponent); }

    static ExpNum exp_of(const Rational& exponent) { return ExpNum(Rational(1), exponent); }

    bool is_zero() const { return terms_.empty(); }

    // True when the value is a plain rational (single e^0 term or zero).
    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
    }

    ExpNum& operator+=(const ExpNum& o) {
        for (const auto& [r, c] : o.terms_) add_term(c, r);
        return *this;
    }
    ExpNum& operator-=(const ExpNum& o) {
        for (const auto& [r, c] : o.terms_) add_term(Rational(-c), r);
        return *this;
    }
    ExpNum& operator*=(const ExpNum& o) {
        std::map<Rational, Rational> out;
        for (const auto& [r1, c1] : terms_)
            for (const auto& [r2, c2] : o.terms_) {
                Rational& slot = out[r1 + r2];
                slot += c1 * c2;
            }
        terms_.clear();
        for (auto& [r, c] : out)
            if (c != 0) terms_.emplace(r, c);
        return *this;
    }

    friend ExpNum operator+(ExpNum a, const ExpNum& b) { return a += b; }
    friend ExpNum operator-(ExpNum a, const ExpNum& b) { return a -= b; }
    friend ExpNum operator*(ExpNum a, const ExpNum& b) { return a *= b; }
    ExpNum operator-() const {
        ExpNum r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, Rational(-c));
        return r;
    }

    // Division by a single-term value c*e^r: shift exponents, divide coeffs.
    ExpNum& operator/=(const ExpNum& o) {
        if (o.terms_.size() != 1)
            throw std::domain_error("ExpNum division requires a single-term divisor");
        const auto& [r0, c0] = *o.terms_.begin();
        if (c0 == 0) throw std::domain_error("ExpNum division by zero");
        std::map<Rational, Rational> out;
        for (const auto& [r, c] : terms_) out.emplace(r - r0, c / c0);
        terms_ = std::move(out);
        return *this;
    }
    friend ExpNum operator/(ExpNum a, const ExpNum& b) { return a /= b; }

    bool operator==(const ExpNum& o) const { return terms_ == o.terms_; }

    // Terms can be large with heavy cancellation (coefficients grow with the
    // jet order), so each term is formed in long double before summing.
    double to_double() const {
        long double acc = 0;
        for (const auto& [r, c] : terms_) acc += to_ldouble(c) * std::exp(to_ldouble(r));
        return static_cast<double>(acc);
    }

    size_t term_count() const { return terms_.size(); }

  private:
    void add_term(const Rational& c, const Rational& r) {
        if (c == 0) return;
        auto it = terms_.find(r);
        if (it == terms_.end()) {
            terms_.emplace(r, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // exponent -> coefficient, zero coefficients never stored
    std::map<Rational, Rational> terms_;
};

inline double to_double(const ExpNum& x) { return x.to_double(); }

}  // namespace czp
