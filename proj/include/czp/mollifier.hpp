// Mollifier data: the polynomials (P1, P2, P) of the coefficient formula
// a(n), the operator polynomial Q, the Levinson radius R and the length
// exponent theta; plus the constraint-embedding parameter basis used by the
// optimizer and the arithmetic coefficient table a(1..y).

#pragma once

#include "czp/arith.hpp"
#include "czp/poly.hpp"
#include "czp/rat.hpp"

#include <cstdint>
#include <vector>

namespace czp {

using RPoly = XPoly<Rational>;

struct MollifierConfig {
    RPoly p1;      // P1: P1(0)=0, P1(1)=1
    RPoly p2;      // P2: P2(0)=0
    RPoly p;       // P:  P(0)=0, weights the prime sum over p <= y^{3/4}
    RPoly q_poly;  // Q:  Q(0)=1, Q'(x)=Q'(1-x)
    Rational R{13, 10};
    Rational theta{4, 7};
    bool simple_zeros_mode = false;   // requires deg Q = 1
    // The published form of the W2*W2 cross term carries a minus sign; the
    // sign-corrected default is +.  This switch restores the printed sign.
    bool paper_literal_signs = false;

    void validate() const;  // throws ValidationError naming the constraint
    int q_degree() const { return q_poly.degree() < 0 ? 0 : q_poly.degree(); }
};

// Constraint-embedding parameterization (every coefficient choice decodes to
// a valid config, so a derivative-free optimizer can move freely):
//   Q(x)  = 1 + sum_{k>=0} g_k * int_0^x (u(1-u))^k du
//   P1(x) = x + sum_{k>=1} d_k x^k (1-x)
//   P2(x) = sum_{k>=1} c_k x^k
//   P(x)  = sum_{k>=1} e_k x^k
// Q(0)=1 and Q'(x)=Q'(1-x) hold because (x(1-x))^k is symmetric about 1/2;
// P1(0)=0 and P1(1)=1 because every basis term vanishes at both ends.
struct ConstrainedParams {
    std::vector<double> q_basis;       // g_0, g_1, ...
    std::vector<double> p1_basis;      // d_1, d_2, ...
    std::vector<double> p2_monomials;  // c_1, c_2, ...
    std::vector<double> p_monomials;   // e_1, e_2, ...
    double R = 1.3;
};

// Exact decodes.  Doubles convert to rationals losslessly (dyadic), so both
// overloads agree with the backends bit-for-bit.
MollifierConfig decode_params(const std::vector<Rational>& q_basis,
                              const std::vector<Rational>& p1_basis,
                              const std::vector<Rational>& p2_monomials,
                              const std::vector<Rational>& p_monomials, const Rational& R,
                              const Rational& theta, bool simple_zeros_mode,
                              bool paper_literal_signs);
MollifierConfig decode_params(const ConstrainedParams& cp, const Rational& theta,
                              bool simple_zeros_mode, bool paper_literal_signs);

// Inverse of decode for configs whose polynomials lie in the basis span;
// throws ValidationError otherwise.  Exact (rational) and double variants.
struct RationalBasis {
    std::vector<Rational> q_basis, p1_basis, p2_monomials, p_monomials;
};
RationalBasis encode_params_exact(const MollifierConfig& cfg);
ConstrainedParams encode_params(const MollifierConfig& cfg);

// a(n) = mu(n) * (P1(x_n) + P2(x_n) * sum_{p|n, p^4 <= y^3} P(log p / log y)),
// x_n = log(y/n)/log y, for 1 <= n <= y.  Index 0 unused.  The cutoff
// p <= y^{3/4} is decided by the exact integer test p^4 <= y^3.
std::vector<double> mollifier_coefficients(const MollifierConfig& cfg, int64_t y);

}  // namespace czp
