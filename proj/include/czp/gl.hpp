// 24-node Gauss-Legendre rule.  Nodes/weights are found once by Newton
// iteration on P_24 (deterministic to the last bit), then mapped to the
// requested interval.  24 nodes integrate polynomials of degree <= 47
// exactly; for the e^{g u} * polynomial integrands of the quadrature
// backend (|g| <= 2 R theta < 1.5, interval length <= 1) the truncation
// error is far below double roundoff, so exact-vs-quadrature agreement is
// limited only by floating-point noise.

#pragma once

#include <array>

namespace czp {

inline constexpr int kGlNodes = 24;

// Stored in long double: the float backend accumulates its jets in extended
// precision so that the m! n! growth of the derivative extraction does not
// lift node-level roundoff above the exact backend's agreement budget.
struct GaussLegendreRule {
    std::array<long double, kGlNodes> node;    // on (-1, 1), ascending
    std::array<long double, kGlNodes> weight;  // positive, symmetric
};

const GaussLegendreRule& gl24();

// integral of f over [x0, x1]
template <class F>
double gl_integrate(F&& f, double x0, double x1) {
    const GaussLegendreRule& r = gl24();
    long double mid = 0.5L * (x0 + x1), half = 0.5L * (x1 - x0);
    long double acc = 0.0L;
    for (int i = 0; i < kGlNodes; ++i)
        acc += r.weight[i] * f(static_cast<double>(mid + half * r.node[i]));
    return static_cast<double>(acc * half);
}

}  // namespace czp
