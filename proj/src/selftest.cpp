#include "czp/selftest.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <random>

#include "czp/arith.hpp"
#include "czp/config.hpp"
#include "czp/levinson.hpp"
#include "czp/moment.hpp"
#include "czp/mollifier.hpp"

namespace czp {

namespace {

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// Reference three-piece configuration (the kappa-optimal polynomials); used
// here only as a realistic test point for backend and truncation checks.
MollifierConfig reference_config() {
    auto r = [](int64_t num, int64_t den) { return Rational(num, den); };
    return decode_params({r(-642, 1000), r(-1227, 1000), r(-5178, 1000)},
                         {r(-617, 1000), r(-125, 1000), r(-148, 1000)}, {r(1, 1)},
                         {r(1155, 1000), r(-1564, 1000), r(177, 1000)}, r(13, 10), r(4, 7),
                         false, false);
}

SelftestResult gauss_sum_modulus() {
    double worst = 0;
    for (int64_t q = 2; q <= 100; ++q)
        for (const auto& chi : characters_mod(q)) {
            if (!chi.is_primitive()) continue;
            double err = std::fabs(std::norm(gauss_sum(chi)) - static_cast<double>(q));
            worst = std::max(worst, err);
        }
    return {"gauss_sum_modulus", worst <= 1e-8,
            fmt("| |tau|^2 - q | <= %.3g over primitive chi, q <= 100", worst)};
}

SelftestResult hurwitz_half_identity() {
    std::mt19937_64 rng(20260815ULL);
    std::uniform_real_distribution<double> sig(0.3, 3.0), ht(-40.0, 40.0);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        cplx s(sig(rng), ht(rng));
        cplx lhs = hurwitz_zeta(s, 0.5);
        cplx rhs = (std::exp(s * std::log(2.0)) - 1.0) * hurwitz_zeta(s, 1.0);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return {"hurwitz_half_identity", worst <= 1e-8,
            fmt("|zeta(s,1/2) - (2^s-1) zeta(s)| <= %.3g over 20 random s", worst)};
}

SelftestResult special_l_values() {
    // L(2, chi_4) is Catalan's constant; L(1, chi_3) = pi / (3 sqrt 3).
    const double catalan = 0.91596559417721902;
    const double pi_3s3 = 0.60459978807807262;
    DirichletCharacter chi4 = characters_mod(4)[1];
    DirichletCharacter chi3 = characters_mod(3)[1];
    double e1 = std::abs(L_value(cplx(2, 0), chi4) - catalan);
    double e2 = std::abs(L_value(cplx(1, 0), chi3) - pi_3s3);
    double worst = std::max(e1, e2);
    return {"special_l_values", worst <= 1e-6,
            fmt("Catalan err %.3g, pi/(3 sqrt 3) err %.3g", e1, e2)};
}

SelftestResult mertens_residual() {
    double lo = 0, hi = -10;
    for (int64_t y : {int64_t(1000), int64_t(10000), int64_t(100000), int64_t(1000000)}) {
        double r = mertens_sum(y) - std::log(static_cast<double>(y));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    bool ok = lo >= -2.0 && hi <= 0.0;
    return {"mertens_residual", ok,
            fmt("sum_{p<=y} log(p)/p - log y in [%.3f, %.3f] for y up to 1e6", lo, hi)};
}

SelftestResult weil_shape_bound() {
    std::mt19937_64 rng(8191ULL);
    std::uniform_int_distribution<int64_t> vd(2, 500), ld(-1000, 1000), gd(1, 3);
    double worst_ratio = 0;
    for (int i = 0; i < 200; ++i) {
        int64_t v = vd(rng), l = ld(rng), g = gd(rng);
        int64_t lv = std::gcd(std::llabs(l), v);
        for (int64_t B = 1; B <= v; B *= 2) {
            double lhs = std::abs(kloosterman_sum(l, v, std::make_pair(B, 2 * B), g));
            double rhs = 10.0 * static_cast<double>(divisor_count(v)) *
                         std::sqrt(static_cast<double>(v)) * static_cast<double>(lv) *
                         (1.0 + static_cast<double>(B) / static_cast<double>(v));
            worst_ratio = std::max(worst_ratio, lhs / rhs);
        }
    }
    return {"weil_shape_bound", worst_ratio <= 1.0,
            fmt("max |S| / bound = %.3g over 200 random (l, v), all dyadic B", worst_ratio)};
}

SelftestResult backend_agreement() {
    MollifierConfig cfg = reference_config();
    BoundReport ex = kappa_lower_bound(cfg, Backend::exact);
    BoundReport qu = kappa_lower_bound(cfg, Backend::quadrature);
    double rel = std::fabs(ex.functional_value - qu.functional_value) /
                 std::fabs(ex.functional_value);
    return {"backend_agreement", rel <= 1e-9,
            fmt("exact vs quadrature Lambda relative difference %.3g", rel)};
}

SelftestResult truncation_stability() {
    MollifierConfig cfg = reference_config();
    BoundReport base = kappa_lower_bound(cfg, Backend::exact);
    BoundReport high = kappa_lower_bound(cfg, Backend::exact, cfg.q_degree() + 2);
    double diff = std::fabs(base.functional_value - high.functional_value);
    return {"truncation_stability", diff <= 1e-10,
            fmt("Lambda drift %.3g between jet orders (%.0f) and (+2)", diff,
                static_cast<double>(base.jet_order_a))};
}

SelftestResult pair_sum_grouping() {
    // Grouped (Moebius-sieved gcd classes) vs direct O(y^2) pair sum on a
    // realistic coefficient vector.
    MollifierConfig cfg = reference_config();
    int64_t y = 300;
    std::vector<double> a = mollifier_coefficients(cfg, y);
    double worst = 0;
    for (int64_t q : {int64_t(1), int64_t(3), int64_t(4)}) {
        double direct = twisted_pair_sum(a, y, q, 7.5, false);
        double grouped = twisted_pair_sum(a, y, q, 7.5, true);
        worst = std::max(worst, std::fabs(direct - grouped) /
                                    std::max(1.0, std::fabs(direct)));
    }
    return {"pair_sum_grouping", worst <= 1e-10,
            fmt("grouped vs direct relative difference %.3g at y = 300", worst)};
}

}  // namespace

std::vector<SelftestResult> run_selftest() {
    std::vector<SelftestResult> out;
    out.push_back(gauss_sum_modulus());
    out.push_back(hurwitz_half_identity());
    out.push_back(special_l_values());
    out.push_back(mertens_residual());
    out.push_back(weil_shape_bound());
    out.push_back(backend_agreement());
    out.push_back(truncation_stability());
    out.push_back(pair_sum_grouping());
    return out;
}

std::string selftest_report_json(const std::vector<SelftestResult>& results) {
    int passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    std::string out = "{\n  \"properties\": [\n";
    for (size_t i = 0; i < results.size(); ++i) {
        out += "    {\"name\": " + json_string(results[i].name) +
               ", \"pass\": " + (results[i].pass ? "true" : "false") +
               ", \"detail\": " + json_string(results[i].detail) + "}";
        out += (i + 1 < results.size()) ? ",\n" : "\n";
    }
    out += "  ],\n";
    out += "  \"passed\": " + std::to_string(passed) + ",\n";
    out += "  \"failed\": " + std::to_string(results.size() - static_cast<size_t>(passed)) +
           "\n}\n";
    return out;
}

}  // namespace czp
