// Main-term module: closed forms for the diagonal component, breakpoint
// continuity of the plateau integral, exact-vs-quadrature backend agreement,
// degeneracies, and the finite arithmetic-sum oracle.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "czp/mainterm.hpp"

using namespace czp;

namespace {

bool near(double x, double y, double tol) {
    return std::fabs(x - y) <= tol * std::max({1.0, std::fabs(x), std::fabs(y)});
}

MollifierConfig p1_only() {
    MollifierConfig c;
    c.p1 = RPoly::monomial(Rational(1), 1);
    c.q_poly = RPoly::constant(Rational(1));
    return c;
}

MollifierConfig kappa_cfg() {
    ConstrainedParams cp;
    cp.q_basis = {-0.642, -1.227, -5.178};
    cp.p1_basis = {-0.617, -0.125, -0.148};
    cp.p2_monomials = {1.0};
    cp.p_monomials = {1.155, -1.564, 0.177};
    cp.R = 1.3;
    return decode_params(cp, Rational(4, 7), false, false);
}

}  // namespace

TEST_CASE("diagonal component closed form: a*b*th^2/3 + (a+b)*th/2 + 1") {
    const Rational th(4, 7);
    MollifierConfig c = p1_only();
    auto s = sigma_component_exact(1, 1, c, Rational(0), Rational(0), 2, 2);
    CHECK((s.at(0, 0) - ExpNum(1)).is_zero());
    CHECK((s.at(1, 0) - ExpNum(th / 2)).is_zero());
    CHECK((s.at(1, 1) - ExpNum(th * th / 3)).is_zero());
    CHECK(s.at(2, 0).is_zero());
    CHECK(s.at(2, 2).is_zero());

    Rational a0(-13, 10), b0(7, 10);
    auto g = sigma_component_exact(1, 1, c, a0, b0, 2, 2);
    Rational e00 = a0 * b0 * th * th / 3 + (a0 + b0) * th / 2 + 1;
    CHECK((g.at(0, 0) - ExpNum(e00)).is_zero());
    CHECK((g.at(1, 0) - ExpNum(b0 * th * th / 3 + th / 2)).is_zero());
    CHECK((g.at(0, 1) - ExpNum(a0 * th * th / 3 + th / 2)).is_zero());
    CHECK((g.at(1, 1) - ExpNum(th * th / 3)).is_zero());

    auto q = sigma_component_quad(1, 1, c, -1.3, 0.7, 2, 2);
    CHECK(near(q.at(0, 0), to_double(e00), 1e-13));
    CHECK(near(q.at(1, 1), to_double(th * th / 3), 1e-13));
}

TEST_CASE("plateau integral: simple value and continuity at the breakpoint") {
    // P = P2 = x at center 0: the s = 1/2 slice gives coefficients [1/2, 0]
    MollifierConfig c = p1_only();
    c.p2 = RPoly::monomial(Rational(1), 1);
    c.p = RPoly::monomial(Rational(1), 1);
    auto w = w2_uni_exact(c, Rational(0), 1);
    CHECK((w[0].lo.eval(Rational(1, 2)) - ExpNum(Rational(1, 2))).is_zero());
    CHECK(w[1].lo.eval(Rational(1, 2)).is_zero());
    auto wq = w2_uni_quad(c, 0.0, 0.5, 1);
    CHECK(near(wq[0], 0.5, 1e-14));
    CHECK(std::fabs(wq[1]) < 1e-15);

    // the two piecewise branches agree exactly at s = 3/4
    MollifierConfig k = kappa_cfg();
    auto wk = w2_uni_exact(k, Rational(-13, 10), 5);
    for (size_t m = 0; m <= 5; ++m) {
        ExpNum d = wk[m].lo.eval(Rational(3, 4)) - wk[m].hi.eval(Rational(3, 4));
        CHECK(d.is_zero());
    }
    auto lo = w2_uni_quad(k, -1.3, 0.75 - 1e-9, 3);
    auto hi = w2_uni_quad(k, -1.3, 0.75 + 1e-9, 3);
    for (size_t m = 0; m <= 3; ++m) CHECK(near(lo[m], hi[m], 1e-6));
}

TEST_CASE("P = 0 collapses the main term to the diagonal component") {
    MollifierConfig c = p1_only();
    c.p2 = RPoly::monomial(Rational(1), 1);  // P2 nonzero but P = 0
    auto s = s_total_exact(c, Rational(-13, 10), Rational(-13, 10), 3, 3);
    auto s11 = sigma_component_exact(1, 1, c, Rational(-13, 10), Rational(-13, 10), 3, 3);
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) CHECK((s.at(m, n) - s11.at(m, n)).is_zero());
}

TEST_CASE("exact and quadrature backends agree on all nine components") {
    MollifierConfig c = kappa_cfg();
    Rational a0(-13, 10);
    double worst = 0;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            auto e = sigma_component_exact(i, j, c, a0, a0, 5, 5);
            auto q = sigma_component_quad(i, j, c, -1.3, -1.3, 5, 5);
            for (int m = 0; m <= 5; ++m)
                for (int n = 0; n <= 5; ++n) {
                    double ev = to_double(e.at(m, n));
                    double rel = std::fabs(ev - q.at(m, n)) / std::max(1.0, std::fabs(ev));
                    worst = std::max(worst, rel);
                }
        }
    CHECK(worst < 1e-9);
}

TEST_CASE("symmetric fast path equals the explicit nine-term sum") {
    MollifierConfig c = kappa_cfg();
    Rational a0(-13, 10);
    auto fast = s_total_exact(c, a0, a0, 5, 5);
    Jet2<ExpNum> slow(5, 5, to_double(a0), to_double(a0));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) slow += sigma_component_exact(i, j, c, a0, a0, 5, 5);
    for (int m = 0; m <= 5; ++m)
        for (int n = 0; n <= 5; ++n) CHECK((fast.at(m, n) - slow.at(m, n)).is_zero());
}

TEST_CASE("oracle: j-decomposition matches the direct double sum at y = 200") {
    MollifierConfig c = kappa_cfg();
    for (int64_t q : {1, 3, 4}) {
        CAPTURE(q);
        double j0 = sigma_bruteforce(c, 200, q, 0.0, 0.0);
        double d0 = sigma_bruteforce_direct(c, 200, q, 0.0, 0.0);
        CHECK(near(j0, d0, 1e-10));
        double j1 = sigma_bruteforce(c, 200, q, -1.3, 0.7);
        double d1 = sigma_bruteforce_direct(c, 200, q, -1.3, 0.7);
        CHECK(near(j1, d1, 1e-10));
    }
    // at y = 1 only the n = m = 1 term survives: a(1)^2 = 1
    CHECK(std::fabs(sigma_bruteforce(c, 1, 3, 0.0, 0.0) - 1.0) < 1e-15);
}

TEST_CASE("oracle approaches the analytic prediction") {
    MollifierConfig c = kappa_cfg();
    auto s = s_total_quad(c, 0.0, 0.0, 1, 1);
    // q/phi(q) = 3/2 at q = 3; L = log(y)/theta makes the predicted sum
    // (3/2) * S(0,0) / log(y)
    double pred = 1.5 * s.at(0, 0) / std::log(1e3);
    double got = sigma_bruteforce(c, 1000, 3, 0.0, 0.0);
    CHECK(std::fabs(got - pred) / std::fabs(pred) < 0.3);
}
