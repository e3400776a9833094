// Exact scalar field (rational-exponential numbers), exponential-polynomial
// calculus, and bivariate Taylor jets: closed-form checks.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "czp/exppoly.hpp"
#include "czp/jet.hpp"

using namespace czp;

TEST_CASE("exp-number field arithmetic") {
    // (1 + e)^2 = 1 + 2e + e^2: three distinct exponentials, right value.
    ExpNum e = ExpNum::exp_of(Rational(1));
    ExpNum v = (ExpNum(1) + e) * (ExpNum(1) + e);
    CHECK(v.term_count() == 3);
    CHECK(v.to_double() == doctest::Approx((1 + M_E) * (1 + M_E)).epsilon(1e-15));
    ExpNum diff = v - ExpNum(1) - ExpNum(2) * e - e * e;
    CHECK(diff.is_zero());
}

TEST_CASE("exponential-polynomial integration") {
    // int_0^1 e^{2x} x dx = (e^2 + 1) / 4
    ExpPoly f(Rational(2), EPolyPart::monomial(ExpNum(1), 1));
    double got = f.integrate(Rational(0), Rational(1)).to_double();
    CHECK(got == doctest::Approx((std::exp(2.0) + 1) / 4).epsilon(1e-15));
}

TEST_CASE("convolutions from zero and over a fixed range") {
    // polynomial: f(u) = u, h(w) = w^2 -> K(x) = int_0^x u (x-u)^2 du = x^4/12
    XPoly<Rational> fu = XPoly<Rational>::monomial(Rational(1), 1);
    XPoly<Rational> hw = XPoly<Rational>::monomial(Rational(1), 2);
    auto K = convolve_from_zero(fu, hw);
    CHECK(K.degree() == 4);
    CHECK(K.coeff(4) == Rational(1, 12));
    CHECK(K.eval(Rational(2)) == Rational(16, 12));

    // exponential: f(u) = e^u, h = 1 -> K(x) = e^x - 1
    ExpPoly fe(Rational(1), EPolyPart::constant(ExpNum(1)));
    auto K2 = convolve_from_zero(fe, EPolyPart::constant(ExpNum(1)));
    CHECK(K2.eval(Rational(1)).to_double() == doctest::Approx(M_E - 1).epsilon(1e-15));

    // fixed range: T(s) = int_0^{1/2} e^u (s - u) du, at s = 9/10
    auto T3 = convolve_fixed_range(fe, EPolyPart::monomial(ExpNum(1), 1), Rational(0),
                                   Rational(1, 2));
    double s = 0.9;
    double want = std::exp(0.5) * (s - 0.5 + 1) - (s + 1);
    CHECK(T3.eval(Rational(9, 10)).to_double() == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("jet division: geometric series") {
    // 1 / (1 - a) about a = 0 has all-ones coefficients.
    Jet2<double> one = Jet2<double>::constant(1.0, 3, 0);
    Jet2<double> den(3, 0);
    den.at(0, 0) = 1;
    den.at(1, 0) = -1;
    Jet2<double> g = one / den;
    for (int m = 0; m <= 3; ++m) CHECK(g.at(m, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exponential-linear jets and the Q-operator") {
    // exp(-(a + b)) about a = b = -13/10: value e^{2.6}, mixed (1,1)
    // coefficient also e^{2.6} (product of the two linear factors).
    auto E = jet_exp_linear<ExpNum, Rational>(Rational(-1), Rational(-1), Rational(1),
                                              Rational(-13, 10), Rational(-13, 10), 2, 2, -1.3,
                                              -1.3);
    CHECK(E.at(0, 0).to_double() == doctest::Approx(std::exp(2.6)).epsilon(1e-14));
    CHECK(E.at(1, 1).to_double() == doctest::Approx(std::exp(2.6)).epsilon(1e-14));

    // Q(-d/da) Q(-d/db) e^{a+b} |_{a=b=0} with Q = 1 - x gives Q(-1)^2 = 4.
    auto Eab = jet_exp_linear<ExpNum, Rational>(Rational(1), Rational(1), Rational(1),
                                                Rational(0), Rational(0), 1, 1, 0, 0);
    XPoly<Rational> Q(std::vector<Rational>{Rational(1), Rational(-1)});
    CHECK(apply_operator(Q, Q, Eab).to_double() == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("jet shape checks and transposition") {
    Jet2<double> j(2, 1, 0.5, -0.5);
    j.at(2, 1) = 7.0;
    Jet2<double> t = j.transposed();
    CHECK(t.at(1, 2) == 7.0);
    // mismatched shapes refuse to combine
    Jet2<double> other(1, 1);
    CHECK_THROWS(j += other);
}
