// Truncated Taylor expansions ("jets") in the shift variables (a, b).
//
// Jets store Taylor COEFFICIENTS (derivatives already divided by
// factorials), so multiplication is a plain truncated Cauchy product and
// factorials enter only when the differential operator Q(-d/da)Q(-d/db) is
// applied.  Jet1 is the univariate building block (the main-term kernels
// V_i and W_2 depend on one shift variable each); Jet2 carries the full
// bivariate expansion that the Levinson functional consumes.
//
// The coefficient type T is double for the quadrature backend and ExpNum
// (or any exact field-like scalar) for the exact backend.  Division is the
// usual power-series recursion and requires an invertible (0,0) entry; the
// pipeline only ever divides by the jet of theta*(a+b), whose entries are
// rational.

#pragma once

#include "czp/poly.hpp"
#include "czp/rat.hpp"

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace czp {

template <class T>
struct Jet1 {
    std::vector<T> c;  // index = order of the Taylor coefficient

    Jet1() = default;
    explicit Jet1(int order) : c(static_cast<size_t>(order) + 1, T(0)) {}
    int order() const { return static_cast<int>(c.size()) - 1; }

    Jet1& operator+=(const Jet1& o) {
        if (o.c.size() != c.size()) throw std::invalid_argument("Jet1 order mismatch");
        for (size_t k = 0; k < c.size(); ++k) c[k] = c[k] + o.c[k];
        return *this;
    }
    friend Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }

    friend Jet1 operator*(const Jet1& a, const Jet1& b) {
        if (a.c.size() != b.c.size()) throw std::invalid_argument("Jet1 order mismatch");
        Jet1 r(a.order());
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; i + j < a.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        return r;
    }

    Jet1 scaled(const T& s) const {
        Jet1 r = *this;
        for (auto& v : r.c) v = v * s;
        return r;
    }
};

template <class T>
class Jet2 {
  public:
    Jet2() = default;
    Jet2(int order_a, int order_b, double center_a = 0, double center_b = 0)
        : na_(order_a),
          nb_(order_b),
          a0_(center_a),
          b0_(center_b),
          c_(static_cast<size_t>(order_a + 1) * static_cast<size_t>(order_b + 1), T(0)) {}

    static Jet2 constant(const T& v, int order_a, int order_b, double ca = 0, double cb = 0) {
        Jet2 j(order_a, order_b, ca, cb);
        j.at(0, 0) = v;
        return j;
    }

    int order_a() const { return na_; }
    int order_b() const { return nb_; }
    double center_a() const { return a0_; }
    double center_b() const { return b0_; }

    T& at(int m, int n) { return c_[idx(m, n)]; }
    const T& at(int m, int n) const { return c_[idx(m, n)]; }

    void check_shape(const Jet2& o) const {
        if (na_ != o.na_ || nb_ != o.nb_) throw std::invalid_argument("jet order mismatch");
        if (a0_ != o.a0_ || b0_ != o.b0_) throw std::invalid_argument("jet center mismatch");
    }

    Jet2& operator+=(const Jet2& o) {
        check_shape(o);
        for (size_t k = 0; k < c_.size(); ++k) c_[k] = c_[k] + o.c_[k];
        return *this;
    }
    Jet2& operator-=(const Jet2& o) {
        check_shape(o);
        for (size_t k = 0; k < c_.size(); ++k) c_[k] = c_[k] - o.c_[k];
        return *this;
    }
    friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }

    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        a.check_shape(b);
        Jet2 r(a.na_, a.nb_, a.a0_, a.b0_);
        for (int m = 0; m <= a.na_; ++m)
            for (int n = 0; n <= a.nb_; ++n) {
                if (scalar_is_zero(a.at(m, n))) continue;
                for (int u = 0; m + u <= a.na_; ++u)
                    for (int v = 0; n + v <= a.nb_; ++v)
                        r.at(m + u, n + v) = r.at(m + u, n + v) + a.at(m, n) * b.at(u, v);
            }
        return r;
    }

    Jet2 scaled(const T& s) const {
        Jet2 r = *this;
        for (auto& v : r.c_) v = v * s;
        return r;
    }

    // Power-series division; requires the divisor's (0,0) entry invertible.
    friend Jet2 operator/(const Jet2& a, const Jet2& b) {
        a.check_shape(b);
        if (scalar_is_zero(b.at(0, 0)))
            throw std::domain_error("jet division by zero constant term");
        Jet2 q(a.na_, a.nb_, a.a0_, a.b0_);
        for (int m = 0; m <= a.na_; ++m)
            for (int n = 0; n <= a.nb_; ++n) {
                T acc = a.at(m, n);
                for (int i = 0; i <= m; ++i)
                    for (int j = 0; j <= n; ++j) {
                        if (i == m && j == n) continue;
                        acc = acc - q.at(i, j) * b.at(m - i, n - j);
                    }
                q.at(m, n) = acc / b.at(0, 0);
            }
        return q;
    }

    // Coefficient transpose: the jet of f(b, a), centered at (b0, a0).
    Jet2 transposed() const {
        Jet2 r(nb_, na_, b0_, a0_);
        for (int m = 0; m <= na_; ++m)
            for (int n = 0; n <= nb_; ++n) r.at(n, m) = at(m, n);
        return r;
    }

    // The jet of f(-a, -b) at center (-a0, -b0): scale (m,n) by (-1)^{m+n}.
    Jet2 arg_negated(double new_ca, double new_cb) const {
        Jet2 r(na_, nb_, new_ca, new_cb);
        for (int m = 0; m <= na_; ++m)
            for (int n = 0; n <= nb_; ++n)
                r.at(m, n) = ((m + n) % 2 == 0) ? at(m, n) : -at(m, n);
        return r;
    }

    Jet2 truncated(int order_a, int order_b) const {
        if (order_a > na_ || order_b > nb_)
            throw std::invalid_argument("cannot truncate to higher order");
        Jet2 r(order_a, order_b, a0_, b0_);
        for (int m = 0; m <= order_a; ++m)
            for (int n = 0; n <= order_b; ++n) r.at(m, n) = at(m, n);
        return r;
    }

    // Outer product of univariate jets: f(a) * g(b).
    static Jet2 outer(const Jet1<T>& fa, const Jet1<T>& gb, double ca, double cb) {
        Jet2 r(fa.order(), gb.order(), ca, cb);
        for (int m = 0; m <= fa.order(); ++m)
            for (int n = 0; n <= gb.order(); ++n)
                r.at(m, n) = fa.c[static_cast<size_t>(m)] * gb.c[static_cast<size_t>(n)];
        return r;
    }

    // Accumulate s * (fa x gb) without building a temporary.
    void add_outer(const Jet1<T>& fa, const Jet1<T>& gb, const T& s) {
        if (fa.order() != na_ || gb.order() != nb_)
            throw std::invalid_argument("outer product order mismatch");
        for (int m = 0; m <= na_; ++m) {
            T fm = fa.c[static_cast<size_t>(m)] * s;
            if (scalar_is_zero(fm)) continue;
            for (int n = 0; n <= nb_; ++n) at(m, n) = at(m, n) + fm * gb.c[static_cast<size_t>(n)];
        }
    }

    template <class U, class Fn>
    Jet2<U> map(Fn&& fn) const {
        Jet2<U> r(na_, nb_, a0_, b0_);
        for (int m = 0; m <= na_; ++m)
            for (int n = 0; n <= nb_; ++n) r.at(m, n) = fn(at(m, n));
        return r;
    }

  private:
    size_t idx(int m, int n) const {
        if (m < 0 || m > na_ || n < 0 || n > nb_) throw std::out_of_range("jet index");
        return static_cast<size_t>(m) * static_cast<size_t>(nb_ + 1) + static_cast<size_t>(n);
    }

    int na_ = 0, nb_ = 0;
    double a0_ = 0, b0_ = 0;
    std::vector<T> c_;
};

// Jet of exp(s*(la*a + lb*b)) at a rational center, exact coefficients:
// coeff(m,n) = e^{s(la*a0 + lb*b0)} (s*la)^m (s*lb)^n / (m! n!).
template <class T, class S>
Jet2<T> jet_exp_linear(const S& la, const S& lb, const S& s, const S& ca, const S& cb,
                       int order_a, int order_b, double meta_ca, double meta_cb) {
    if (order_a > 32 || order_b > 32)
        throw std::invalid_argument("jet_exp_linear: order cap 32 exceeded");
    Jet2<T> r(order_a, order_b, meta_ca, meta_cb);
    // power tables
    std::vector<S> pa(static_cast<size_t>(order_a) + 1, S(1)),
        pb(static_cast<size_t>(order_b) + 1, S(1));
    for (int m = 1; m <= order_a; ++m) pa[static_cast<size_t>(m)] = pa[static_cast<size_t>(m - 1)] * (s * la);
    for (int n = 1; n <= order_b; ++n) pb[static_cast<size_t>(n)] = pb[static_cast<size_t>(n - 1)] * (s * lb);
    T head = T(1);
    if constexpr (std::is_same_v<T, double>) {
        head = std::exp(s * (la * ca + lb * cb));
    } else {
        head = T::exp_of(s * (la * ca + lb * cb));
    }
    Rational fm(1);
    for (int m = 0; m <= order_a; ++m) {
        if (m > 0) fm *= m;
        Rational fn(1);
        for (int n = 0; n <= order_b; ++n) {
            if (n > 0) fn *= n;
            if constexpr (std::is_same_v<T, double>) {
                r.at(m, n) = head * pa[static_cast<size_t>(m)] * pb[static_cast<size_t>(n)] /
                             to_double(fm * fn);
            } else {
                r.at(m, n) = head * T(pa[static_cast<size_t>(m)]) * T(pb[static_cast<size_t>(n)]) /
                             T(fm * fn);
            }
        }
    }
    return r;
}

// Q(-d/da) Q(-d/db) f at the jet's center:
// sum_{m,n} qa_m qb_n (-1)^{m+n} m! n! coeff(m,n).
// Instantiated as (XPoly<Rational>, Jet2<ExpNum>) on the exact backend and
// (XPoly<double>, Jet2<double>) on the quadrature backend.
template <class T, class U>
T apply_operator(const XPoly<U>& qa, const XPoly<U>& qb, const Jet2<T>& f) {
    if (qa.degree() > f.order_a() || qb.degree() > f.order_b())
        throw std::invalid_argument("jet order too low for operator degree");
    T acc = T(0);
    Rational fm(1);
    for (int m = 0; m <= qa.degree(); ++m) {
        if (m > 0) fm *= m;
        Rational fn(1);
        for (int n = 0; n <= qb.degree(); ++n) {
            if (n > 0) fn *= n;
            U qq = qa.coeff(static_cast<size_t>(m)) * qb.coeff(static_cast<size_t>(n));
            if (scalar_is_zero(qq)) continue;
            Rational sf = ((m + n) % 2 == 0 ? fm : -fm) * fn;
            if constexpr (std::is_same_v<T, double>) {
                acc += qq * to_double(sf) * f.at(m, n);
            } else {
                acc += T(Rational(qq) * sf) * f.at(m, n);
            }
        }
    }
    return acc;
}

}  // namespace czp
