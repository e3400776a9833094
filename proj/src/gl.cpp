#include "czp/gl.hpp"

#include <cmath>

namespace czp {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence, in long double so the
// stored nodes carry full extended precision.
void legendre(int n, long double x, long double& p, long double& dp) {
    long double p0 = 1.0L, p1 = x;
    for (int k = 2; k <= n; ++k) {
        long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    // (1-x^2) P_n'(x) = n (P_{n-1}(x) - x P_n(x))
    dp = n * (p0 - x * p1) / (1.0L - x * x);
}

GaussLegendreRule build() {
    GaussLegendreRule r;
    const int n = kGlNodes;
    for (int i = 0; i < n / 2; ++i) {
        // Tricomi-style initial guess, then Newton
        long double x = std::cos(M_PIl * (i + 0.75L) / (n + 0.5L));
        long double p, dp;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, p, dp);
            long double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        legendre(n, x, p, dp);
        long double w = 2.0L / ((1.0L - x * x) * dp * dp);
        r.node[static_cast<size_t>(n - 1 - i)] = x;
        r.node[static_cast<size_t>(i)] = -x;
        r.weight[static_cast<size_t>(n - 1 - i)] = w;
        r.weight[static_cast<size_t>(i)] = w;
    }
    return r;
}

}  // namespace

const GaussLegendreRule& gl24() {
    static const GaussLegendreRule rule = build();
    return rule;
}

}  // namespace czp
