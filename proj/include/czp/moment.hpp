// Desk-scale verification of the twisted second moment: the integral
//
//   I(chi) = int_T^{2T} |L(1/2+it, chi)|^2 |B(1/2+it, chi)|^2 dt
//
// evaluated two ways -- direct quadrature of the integrand, and the analytic
// main-term formula
//
//   T * (phi(q)/q) * sum_{h,k <= y} a(h) a(k) chi_0(hk) / [h,k]
//       * ( log(T q (h,k)^2 / (2 pi h k)) + 2 gamma - 1 + c_q + 2 log 2 ),
//
// whose ratio should drift toward 1 as T grows.  The factor T and the
// lowercase hk inside the logarithm are deliberate: integrating the
// proposition's g(w) = log(w q (h,k)^2 / (2 pi h k)) + ... over w in [T, 2T]
// is what produces the -1 + 2 log 2 terms, which forces both readings.
//
// L is evaluated through the Hurwitz zeta function,
// L(s, chi) = q^{-s} sum_{r=1}^{q} chi(r) zeta(s, r/q), with zeta(s, x)
// computed by Euler-Maclaurin.  This is slower than an approximate
// functional equation but has rigorous error control and is testable
// against exact identities, which matters more at q <= 5, T <= 10^4.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "czp/arith.hpp"
#include "czp/mollifier.hpp"

namespace czp {

inline constexpr double euler_gamma = 0.57721566490153286;

// Hurwitz zeta zeta(s, x) = sum_{n >= 0} (n+x)^{-s} by Euler-Maclaurin:
// a head of N = max(16, ceil(n_multiplier * |Im s|)) explicit terms, then
// (N+x)^{1-s}/(s-1) + (N+x)^{-s}/2 and `bernoulli_terms` correction terms
// B_{2j}/(2j)! * s(s+1)...(s+2j-2) * (N+x)^{-s-2j+1}.  Absolute error is
// well below 1e-10 at the defaults.  Requires x in (0, 1] and s != 1
// (NumericDomainError at the pole); |Im s| > 1e5 is a CapacityError.
cplx hurwitz_zeta(cplx s, double x, double n_multiplier, int bernoulli_terms);
cplx hurwitz_zeta(cplx s, double x);

// L(s, chi) via the Hurwitz decomposition above.  At s = 1 the principal
// character propagates the pole error; for non-principal chi the point is
// regular and is evaluated by replacing each pole term (N+x)^{1-s}/(s-1)
// with its regularized limit -log(N+x), valid because sum_r chi(r) = 0
// cancels the 1/(s-1) parts exactly.
cplx L_value(cplx s, const DirichletCharacter& chi, double n_multiplier, int bernoulli_terms);
cplx L_value(cplx s, const DirichletCharacter& chi);

struct MomentConfig {
    int64_t q = 3;
    int character_index = 0;  // index among the primitive characters mod q
    std::vector<double> T{2000.0};
    double theta = 0.45;  // mollifier length y = floor(T^theta)
    // Mollifier source: a full config, or std::nullopt for B == 1 (the
    // unmollified moment, equivalently a(1) = 1 and y = 1).
    std::optional<MollifierConfig> mollifier;
    double step = 0.05;  // Simpson step; integrand features live at scale ~1
    double em_n_multiplier = 1.3;
    int em_bernoulli_terms = 12;

    void validate() const;
    DirichletCharacter character() const;
    int64_t mollifier_length(double t_endpoint) const;  // floor(T^theta), >= 1
};

struct MomentPoint {
    double T = 0;
    double I_numeric = 0;
    double I_main = 0;
    double ratio = 0;                    // I_numeric / I_main
    std::vector<double> partials;        // Simpson partials, 8 equal subintervals
};

struct VerificationReport {
    MomentConfig config;  // parameter echo
    std::vector<MomentPoint> points;
    std::vector<std::string> warnings;
    double elapsed_seconds = 0;  // human-readable output only, not serialized
};

// sum_{h,k <= y, gcd(hk,q)=1} a(h) a(k) / [h,k] *
//     (c_log + log((h,k)^2 / (h k)))
// with a indexed 1..y (a[0] ignored).  Direct O(y^2) double loop for
// y <= 2000; beyond that the sum is grouped by g = (h,k) with a Moebius
// sieve over the coprimality condition (the gcd-class structure of the
// arithmetic-oracle decomposition), costing O(y log^2 y).  `grouped`
// overrides the size-based choice (used to cross-test the two paths).
double twisted_pair_sum(const std::vector<double>& a, int64_t y, int64_t q, double c_log,
                        std::optional<bool> grouped = std::nullopt);

// Main-term formula at lower endpoint t_endpoint (uses config q, theta,
// mollifier).  Exact gcd/lcm arithmetic; no quadrature involved.
double I_main(const MomentConfig& mc, double t_endpoint);
double I_main(const MomentConfig& mc);  // at T.front()

// Composite-Simpson quadrature of |L * B|^2 over [T, 2T] with step <= mc.step
// on 8 equal subintervals (partials in `partials` when non-null).  Samples
// are independent; with threads > 1 they are evaluated concurrently and the
// reduction is a pairwise sum in index order, so the result is bit-identical
// for every thread count.  When `warnings` is non-null a probe subinterval
// [T, T+50] is re-integrated at half step and a drift > 1% emits a warning.
// Throws CapacityError when the cost estimate exceeds 1e10 term evaluations.
double I_numeric(const MomentConfig& mc, double t_endpoint, int threads = 1,
                 std::vector<double>* partials = nullptr,
                 std::vector<std::string>* warnings = nullptr);
double I_numeric(const MomentConfig& mc);  // at T.front(), single-threaded

// Runs I_numeric and I_main at every endpoint in mc.T and packages the
// ratios; multiple endpoints give the asymptotic trend data.
VerificationReport verify_report(const MomentConfig& mc, int threads = 1);

}  // namespace czp
