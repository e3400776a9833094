// Internal Euler-Maclaurin kernel shared by hurwitz_zeta / L_value and the
// moment integrator.  The integrator evaluates zeta(1/2 + it, r/q) at tens
// of thousands of t-samples with the same x, so it precomputes the head
// tables log(n+x), (n+x)^{-sigma} once per residue and replays this kernel;
// routing both callers through the same code keeps them numerically
// identical by construction.

#pragma once

#include <complex>
#include <vector>

#include "czp/arith.hpp"

namespace czp::detail {

// Head tables for fixed x and fixed Re s: lg[n] = log(n+x),
// rs[n] = (n+x)^{-sigma}, for n = 0..n_cap inclusive.  Entry n_cap exists so
// a head of N <= n_cap terms can read its boundary point w = N + x from
// lg[N] / rs[N].
struct EmTables {
    double x = 0;
    double sigma = 0;
    std::vector<double> lg, rs;

    void build(double x_in, double sigma_in, int n_cap);
};

// sum_{n=0}^{N-1} (n+x)^{-sigma-it}, accumulated in long double.
cplx em_head(const EmTables& tb, int N, double t);

// Boundary terms at w = N + x:  w^{1-s}/(s-1) + w^{-s}/2 + the first K
// Bernoulli corrections B_{2j}/(2j)! * s(s+1)...(s+2j-2) * w^{-s-2j+1}.
// With `regularized` the pole term is replaced by its s -> 1 limit -log(w)
// (legitimate only inside a character sum whose coefficients sum to zero).
cplx em_tail(std::complex<double> s, double lgw, int K, bool regularized);

// Euler-Maclaurin head length for height |Im s| = t_abs.
int em_head_length(double t_abs, double n_multiplier);

}  // namespace czp::detail
