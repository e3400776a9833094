// Arithmetic oracle for the main-term sum: evaluates the bilinear form over
// the actual mollifier coefficients, with no analytic machinery, so the jet
// pipeline has something independent to converge to.
//
// The j-decomposition rests on the finite identity
//     n^s = sum_{j | n} j^s prod_{p | j} (1 - p^{-s}),
// (check it on prime powers: the inner product telescopes), applied to
// n = (h, k) with s = 1 + alpha + beta.  Grouping pairs by the divisor j
// turns the O(y^2) double sum into sum_j j^{-1} F(j, s) E(alpha,j) E(beta,j)
// with one coefficient pass per j, i.e. O(y log y) work.  Both forms are
// finite sums of the same terms, so they agree to roundoff at any y.

#include <cmath>
#include <numeric>
#include <vector>

#include "czp/arith.hpp"
#include "czp/mainterm.hpp"

namespace czp {

namespace {

// h^{-(1+alpha)} tables and the coprime-to-q residue mask.
std::vector<double> power_table(int64_t y, double expo) {
    std::vector<double> t(static_cast<size_t>(y) + 1, 0.0);
    for (int64_t h = 1; h <= y; ++h)
        t[static_cast<size_t>(h)] = std::exp(-expo * std::log(static_cast<double>(h)));
    return t;
}

std::vector<char> coprime_mask(int64_t q) {
    std::vector<char> m(static_cast<size_t>(q), 0);
    for (int64_t r = 0; r < q; ++r) m[static_cast<size_t>(r)] = (std::gcd(r, q) == 1) ? 1 : 0;
    return m;
}

void check_oracle_args(int64_t y, int64_t q, int64_t y_cap) {
    if (y < 1) throw ValidationError("oracle truncation y must be at least 1");
    if (q < 1) throw ValidationError("modulus q must be at least 1");
    if (y > y_cap)
        throw CapacityError("oracle truncation y exceeds the cost guard " + std::to_string(y_cap));
}

}  // namespace

double sigma_bruteforce(const MollifierConfig& cfg, int64_t y, int64_t q, double a, double b) {
    check_oracle_args(y, q, 10000000);
    std::vector<double> coef = mollifier_coefficients(cfg, y);
    if (y == 1) return coef[1] * coef[1];
    double big_l = std::log(static_cast<double>(y)) / to_double(cfg.theta);
    double alpha = a / big_l, beta = b / big_l;
    SieveTables sv = build_sieve(y);
    std::vector<double> ha = power_table(y, 1.0 + alpha);
    std::vector<double> hb = (beta == alpha) ? ha : power_table(y, 1.0 + beta);
    std::vector<char> unit = coprime_mask(q);
    double s = 1.0 + alpha + beta;
    double total = 0.0;
    for (int64_t j = 1; j <= y; ++j) {
        if (sv.mobius[static_cast<size_t>(j)] == 0) continue;  // a(hj) = 0 throughout
        if (!unit[static_cast<size_t>(j % q)]) continue;       // chi_0(j) = 0
        double ea = 0.0, eb = 0.0;
        for (int64_t h = 1, hj = j; hj <= y; ++h, hj += j) {
            double c = coef[static_cast<size_t>(hj)];
            if (c == 0.0 || !unit[static_cast<size_t>(h % q)]) continue;
            ea += c * ha[static_cast<size_t>(h)];
            eb += c * hb[static_cast<size_t>(h)];
        }
        if (ea == 0.0 && eb == 0.0) continue;
        double f = 1.0;
        for (int64_t p : sv.prime_factors(j))
            f *= 1.0 - std::exp(-s * std::log(static_cast<double>(p)));
        total += f * ea * eb / static_cast<double>(j);
    }
    return total;
}

double sigma_bruteforce_direct(const MollifierConfig& cfg, int64_t y, int64_t q, double a,
                               double b) {
    check_oracle_args(y, q, 5000);
    std::vector<double> coef = mollifier_coefficients(cfg, y);
    if (y == 1) return coef[1] * coef[1];
    double big_l = std::log(static_cast<double>(y)) / to_double(cfg.theta);
    double alpha = a / big_l, beta = b / big_l;
    std::vector<double> ha = power_table(y, 1.0 + alpha);
    std::vector<double> hb = (beta == alpha) ? ha : power_table(y, 1.0 + beta);
    std::vector<char> unit = coprime_mask(q);
    double total = 0.0;
    for (int64_t h = 1; h <= y; ++h) {
        if (coef[static_cast<size_t>(h)] == 0.0 || !unit[static_cast<size_t>(h % q)]) continue;
        for (int64_t k = 1; k <= y; ++k) {
            if (coef[static_cast<size_t>(k)] == 0.0 || !unit[static_cast<size_t>(k % q)]) continue;
            double g = static_cast<double>(std::gcd(h, k));
            total += coef[static_cast<size_t>(h)] * coef[static_cast<size_t>(k)] *
                     std::exp((1.0 + alpha + beta) * std::log(g)) * ha[static_cast<size_t>(h)] *
                     hb[static_cast<size_t>(k)];
        }
    }
    return total;
}

}  // namespace czp
