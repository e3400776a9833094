// Univariate polynomials over an arbitrary coefficient ring T
// (double, Rational, ExpNum).  Coefficients are stored by ascending degree
// with trailing zeros normalized away; the zero polynomial has no
// coefficients.  Everything the main-term integrals need is exact in T:
// evaluation, derivative, antiderivative, affine composition, and the
// convolution  K(x) = int_0^x f(u) h(x-u) du.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace czp {

template <class T>
bool scalar_is_zero(const T& v) {
    return v == T(0);
}
inline bool scalar_is_zero(const double& v) { return v == 0.0; }

template <class T>
class XPoly {
  public:
    XPoly() = default;
    explicit XPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }
    static XPoly constant(const T& v) { return XPoly(std::vector<T>{v}); }
    static XPoly monomial(const T& v, size_t degree) {
        std::vector<T> c(degree + 1, T(0));
        c[degree] = v;
        return XPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial reported as -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    size_t size() const { return c_.size(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(size_t k) const { return k < c_.size() ? c_[k] : T(0); }

    template <class X>
    X eval(const X& x) const {
        X acc = X(0);
        for (size_t k = c_.size(); k-- > 0;) acc = acc * x + X(c_[k]);
        return acc;
    }

    XPoly derivative() const {
        if (c_.size() <= 1) return XPoly();
        std::vector<T> d(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<int>(k));
        return XPoly(std::move(d));
    }

    // Antiderivative with value 0 at x = 0.
    XPoly antiderivative() const {
        if (c_.empty()) return XPoly();
        std::vector<T> a(c_.size() + 1, T(0));
        for (size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / T(static_cast<int>(k) + 1);
        return XPoly(std::move(a));
    }

    // p(alpha*x + beta), expanded.
    XPoly compose_affine(const T& alpha, const T& beta) const {
        XPoly res;
        XPoly lin(std::vector<T>{beta, alpha});
        for (size_t k = c_.size(); k-- > 0;) res = res * lin + constant(c_[k]);
        return res;
    }

    // p(x)/x for polynomials with p(0) = 0 (coefficient shift; used for
    // P(u)/u, whose 0/0 at the origin is removable by construction).
    XPoly shift_down() const {
        if (c_.empty()) return XPoly();
        if (!scalar_is_zero(c_[0]))
            throw std::domain_error("shift_down requires a zero constant term");
        return XPoly(std::vector<T>(c_.begin() + 1, c_.end()));
    }

    XPoly& operator+=(const XPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] + o.c_[k];
        normalize();
        return *this;
    }
    XPoly& operator-=(const XPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] - o.c_[k];
        normalize();
        return *this;
    }
    friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
    friend XPoly operator-(XPoly a, const XPoly& b) { return a -= b; }
    XPoly operator-() const {
        XPoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend XPoly operator*(const XPoly& a, const XPoly& b) {
        if (a.c_.empty() || b.c_.empty()) return XPoly();
        std::vector<T> p(a.c_.size() + b.c_.size() - 1, T(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) p[i + j] = p[i + j] + a.c_[i] * b.c_[j];
        return XPoly(std::move(p));
    }

    XPoly scaled(const T& s) const {
        XPoly r = *this;
        for (auto& v : r.c_) v = v * s;
        r.normalize();
        return r;
    }

    bool operator==(const XPoly& o) const { return c_ == o.c_; }

    template <class U, class Fn>
    XPoly<U> map(Fn&& fn) const {
        std::vector<U> out(c_.size());
        for (size_t k = 0; k < c_.size(); ++k) out[k] = fn(c_[k]);
        return XPoly<U>(std::move(out));
    }

  private:
    void normalize() {
        while (!c_.empty() && scalar_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

// Definite integral of p over [x0, x1], exact in T.
template <class T>
T integrate_over(const XPoly<T>& p, const T& x0, const T& x1) {
    XPoly<T> a = p.antiderivative();
    return a.eval(x1) - a.eval(x0);
}

// Convolution-type integral  K(x) = int_0^x f(u) h(x-u) du  as a polynomial
// in x.  Expand h(x-u) binomially; each int_0^x u^i f(u) du is the
// antiderivative of u^i f(u) evaluated at x (it vanishes at 0).
template <class T>
XPoly<T> convolve_from_zero(const XPoly<T>& f, const XPoly<T>& h) {
    XPoly<T> out;
    if (f.is_zero() || h.is_zero()) return out;
    // F_i(x) = int_0^x u^i f(u) du
    std::vector<XPoly<T>> F;
    for (int i = 0; i <= h.degree(); ++i)
        F.push_back((XPoly<T>::monomial(T(1), static_cast<size_t>(i)) * f).antiderivative());
    // binomials up to deg h
    for (int k = 0; k <= h.degree(); ++k) {
        if (scalar_is_zero(h.coeff(static_cast<size_t>(k)))) continue;
        T binom(1);
        for (int i = 0; i <= k; ++i) {
            // term h_k * C(k,i) * (-1)^i * x^{k-i} * F_i(x)
            T sign = (i % 2 == 0) ? T(1) : T(-1);
            XPoly<T> term =
                XPoly<T>::monomial(h.coeff(static_cast<size_t>(k)) * binom * sign,
                                   static_cast<size_t>(k - i)) *
                F[static_cast<size_t>(i)];
            out += term;
            // C(k,i+1) = C(k,i) * (k-i)/(i+1)
            binom = binom * T(k - i) / T(i + 1);
        }
    }
    return out;
}

}  // namespace czp
