#pragma once

// The zero-proportion functional and its optimizer.
//
// With S(a, b) the bare main-term jet (prefactor stripped), the lower bound
// for the proportion of critical zeros is
//
//   kappa >= 1 - (1/R) log Lambda,
//   Lambda = Q(-d/da) Q(-d/db) [ S(b,a) - e^{-a-b} S(-a,-b) ] / (theta (a+b))
//            evaluated at a = b = -R,
//
// and a linear Q turns the same bound into one for simple critical zeros.
// The stripped prefactor is exactly what makes Lambda modulus- and
// length-free: the 1/(alpha+beta) of the moment asymptotic contributes the
// factor L that cancels 1/(theta L), and phi(q)/q cancels against the
// moment's own prefactor.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "czp/jet.hpp"
#include "czp/mainterm.hpp"
#include "czp/mollifier.hpp"

namespace czp {

struct BoundReport {
    double kappa_lower_bound = 0;
    double functional_value = 0;  // Lambda
    std::string backend;          // "exact" or "quadrature"
    int jet_order_a = 0;
    int jet_order_b = 0;
    std::vector<std::string> warnings;
    double elapsed_seconds = 0;  // wall clock; human table only, never serialized
    MollifierConfig config;      // echo of the evaluated configuration
};

// Lambda from precomputed bare jets: s_neg at (-R,-R), s_pos at (R,R),
// orders at least deg Q.  Throws NumericDomainError if theta*(a+b) is
// singular at the center (|2 theta R| < 1e-9).
double functional_value(const Jet2<ExpNum>& s_neg, const Jet2<ExpNum>& s_pos, const RPoly& q_poly,
                        const Rational& r_radius, const Rational& theta);
double functional_value(const Jet2<double>& s_neg, const Jet2<double>& s_pos,
                        const XPoly<double>& q_poly, double r_radius, double theta);

// Full pipeline: jets at both centers, Lambda, kappa = 1 - log(Lambda)/R.
// order_override < 0 means orders (deg Q, deg Q); larger values re-run at
// higher order (truncation-stability checks).  Lambda <= 0 throws
// NumericDomainError: the configuration is outside the Levinson regime.
BoundReport kappa_lower_bound(const MollifierConfig& cfg, Backend backend,
                              int order_override = -1);

struct OptimizeSettings {
    Rational theta{4, 7};
    bool simple_zeros_mode = false;
    bool paper_literal_signs = false;
    // Frozen blocks keep their start values; everything else is searched.
    bool freeze_q = false;
    bool freeze_p1 = false;
    bool freeze_p2 = false;
    bool freeze_p = false;
    bool freeze_r = false;
    Backend backend = Backend::quadrature;  // objective backend (quadrature: ~2 ms/eval)
    int order_override = -1;
};

// Nelder-Mead maximization of kappa_lower_bound over the unfrozen blocks of
// `start`.  budget counts objective evaluations; the returned BoundReport is
// one further evaluation at the best point (outside the budget).  Fully
// deterministic for fixed (start, settings, budget, seed): the seed feeds
// only the initial simplex displacement signs.  Candidates that fail
// validation or leave the Levinson regime score -infinity; if every sampled
// point fails, throws NumericDomainError.
std::pair<ConstrainedParams, BoundReport> optimize_mollifier(const ConstrainedParams& start,
                                                             const OptimizeSettings& settings,
                                                             int64_t budget, uint64_t seed);

}  // namespace czp
