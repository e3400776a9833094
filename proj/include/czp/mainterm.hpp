#pragma once

// Main-term sums for the mollified second moment.
//
// The diagonal main term of the twisted second moment, after the standard
// contour/Mellin analysis, collapses to a sum of nine bilinear pieces
//
//     S(a, b) = sum_{i,j in {1,2,3}} sigma_{ij}(a, b),
//
// one for each pair of mollifier components (the P1 piece, the Euler-product
// correction piece, and the prime-power P piece).  Each sigma_{ij} is a low
// dimensional integral of products of the kernels
//
//     V_i(a, t) = a * theta * P_i(t) + P_i'(t),
//     W_2(a, t) = int_0^{min(t, 3/4)} e^{-a theta u} (P(u)/u) V_2(a, t - u) du,
//
// and all of them are jointly smooth except across the breakpoints u = 3/4
// (the support cutoff of P(u)/u) and, in the outer variable, t = 1/4 (where
// 1 - t crosses 3/4).  Everything here is computed as a truncated Taylor jet
// in the shifts (a, b) about a prescribed center, because the zero-counting
// functional downstream differentiates S through the polynomial Q.
//
// Two interchangeable backends are provided:
//   * exact      — coefficients in the closed field generated by rationals and
//                  exponentials e^{r} with rational r (ExpNum), manipulating
//                  piecewise exponential-polynomials symbolically;
//   * quadrature — Gauss-Legendre in double precision on the identical piece
//                  decomposition, so the two agree to roundoff.
//
// The quadrature backend exists because the exact one, while airtight, costs
// too much inside an optimizer loop; the exact one exists because the
// quadrature one cannot certify its own piece decomposition.

#include <vector>

#include "czp/exppoly.hpp"
#include "czp/jet.hpp"
#include "czp/mollifier.hpp"

namespace czp {

enum class Backend { exact, quadrature };

// A function of one variable on [0, 1], exponential-polynomial on each of
// [0, 3/4] and [3/4, 1].  Continuity at 3/4 is a property of the inputs we
// build (W_2 is continuous), not an invariant of the type.
struct PiecewiseExp {
    ExpPoly lo;  // valid on [0, 3/4]
    ExpPoly hi;  // valid on [3/4, 1]
};

// Taylor jet in one shift variable with piecewise-exponential-polynomial
// coefficients: entry m is (1/m!) d^m/da^m of the kernel at the center.
using UniJetExact = std::vector<PiecewiseExp>;

// --- exact backend -------------------------------------------------------

// Jet of V_i(a, t) in a about a = center: entry 0 is center*theta*P_i + P_i',
// entry 1 is theta*P_i, higher entries vanish.  i must be 1 or 2.
UniJetExact v_uni_exact(int i, const MollifierConfig& cfg, const Rational& center, int order);

// Jet of W_2(a, t) in a about a = center.  For t <= 3/4 the u-integral runs
// to t (piece `lo`); for t >= 3/4 it saturates at 3/4 (piece `hi`).
UniJetExact w2_uni_exact(const MollifierConfig& cfg, const Rational& center, int order);

// Bivariate wrappers evaluating a univariate kernel jet at a fixed t, placed
// along one axis of a Jet2 (variable 0 = first shift, 1 = second).  These are
// mostly for tests and the oracle; the sigma assembly integrates the
// univariate jets directly.
Jet2<ExpNum> v_jet_exact(int i, const MollifierConfig& cfg, int variable, const Rational& t,
                         const Rational& a0, const Rational& b0, int na, int nb);
Jet2<ExpNum> w2_jet_exact(const MollifierConfig& cfg, int variable, const Rational& t,
                          const Rational& a0, const Rational& b0, int na, int nb);

// One bilinear piece sigma_{ij}(a, b) as a jet about (a0, b0), with the
// overall prefactor (q/phi(q)) * 1/(theta L) stripped: these are the "bare"
// main-term sums, to be rescaled by the caller that knows q and L.
// Signs: the cross terms involving exactly one W_2 factor enter negatively;
// sigma_22 enters positively unless cfg.paper_literal_signs requests the
// literal printed sign.
Jet2<ExpNum> sigma_component_exact(int i, int j, const MollifierConfig& cfg,
                                   const Rational& a0, const Rational& b0, int na, int nb);

// Sum of all nine components.
Jet2<ExpNum> s_total_exact(const MollifierConfig& cfg, const Rational& a0, const Rational& b0,
                           int na, int nb);

// --- quadrature backend --------------------------------------------------

// Same objects with double coefficients; `center`/`t` are doubles and the
// univariate jets are plain coefficient vectors (length order+1).
std::vector<double> v_uni_quad(int i, const MollifierConfig& cfg, double center, double t, int order);
std::vector<double> w2_uni_quad(const MollifierConfig& cfg, double center, double t, int order);

Jet2<double> v_jet_quad(int i, const MollifierConfig& cfg, int variable, double t,
                        double a0, double b0, int na, int nb);
Jet2<double> w2_jet_quad(const MollifierConfig& cfg, int variable, double t,
                         double a0, double b0, int na, int nb);

Jet2<double> sigma_component_quad(int i, int j, const MollifierConfig& cfg,
                                  double a0, double b0, int na, int nb);

Jet2<double> s_total_quad(const MollifierConfig& cfg, double a0, double b0, int na, int nb);

// --- arithmetic oracle ---------------------------------------------------

// Direct evaluation of the arithmetic main-term sum at scalar shifts from
// the mollifier coefficients themselves, via the j-decomposition
//
//   Sigma(alpha, beta) = sum_{j <= y} chi0(j) mu^2(j) F(j, 1+alpha+beta) / j
//                        * E(alpha, j) * E(beta, j),
//   E(alpha, j) = sum_{h <= y/j, (h, q) = 1} a(hj) / h^{1 + alpha},
//
// where alpha = a / L, beta = b / L, L = log(y) / theta.  As y grows this
// approaches (q/phi(q)) / (theta L) * S(a, b), i.e. the analytic jets with
// their stripped prefactor restored; the toolkit compares at a = b = 0.
// Cost O(y log y); y capped at 1e7.
double sigma_bruteforce(const MollifierConfig& cfg, int64_t y, int64_t q, double a, double b);

// O(y^2) literal double sum over coefficient pairs (m, n) with the gcd
// factor (m,n)^{1+alpha+beta} / (mn), for validating sigma_bruteforce at
// small y.
double sigma_bruteforce_direct(const MollifierConfig& cfg, int64_t y, int64_t q, double a, double b);

}  // namespace czp
