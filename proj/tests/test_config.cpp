// Config layer: INI parsing, the canonical echo and its round-trip
// invariant, validation diagnostics, JSON report shape, the shipped config
// files, and the property selftest.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "czp/config.hpp"
#include "czp/levinson.hpp"
#include "czp/selftest.hpp"

using namespace czp;

namespace {

const char* kKappaIni = R"INI(
# proportion-of-zeros configuration (three-piece mollifier)
[mollifier]
q_basis = -0.642, -1.227, -5.178
p1_basis = -0.617, -0.125, -0.148
p2_monomials = 1
p_monomials = 1.155, -1.564, 0.177
R = 1.3
theta = 4/7

[run]
backend = exact
)INI";

void expect_error(const char* doc, const char* needle) {
    try {
        parse_config(doc);
        FAIL_CHECK("expected ValidationError containing '" << needle << "'");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
}

}  // namespace

TEST_CASE("parse: basis keys decode to the expected exact polynomials") {
    ParsedConfig pc = parse_config(kKappaIni);
    REQUIRE(pc.mollifier.has_value());
    const MollifierConfig& m = *pc.mollifier;
    // Q(x) = 1 - .642 x - 1.227 (x^2/2 - x^3/3) - 5.178 (x^3/3 - x^4/2 + x^5/5)
    CHECK(m.q_poly.coeff(0) == Rational(1));
    CHECK(m.q_poly.coeff(1) == Rational(-642, 1000));
    CHECK(m.q_poly.coeff(2) == Rational(-1227, 1000) / 2);
    CHECK(m.q_poly.coeff(3) == Rational(1227, 1000) / 3 - Rational(5178, 1000) / 3);
    CHECK(m.q_poly.coeff(4) == Rational(5178, 1000) / 2);
    CHECK(m.q_poly.coeff(5) == Rational(-5178, 1000) / 5);
    CHECK(m.R == Rational(13, 10));
    CHECK(m.theta == Rational(4, 7));
    REQUIRE(pc.run.backend.has_value());
    CHECK(*pc.run.backend == "exact");
}

TEST_CASE("canonical echo: fixed point and bit-identical re-evaluation") {
    ParsedConfig pc = parse_config(kKappaIni);
    std::string canon = canonical_config_ini(pc);
    ParsedConfig pc2 = parse_config(canon);
    CHECK(canonical_config_ini(pc2) == canon);

    BoundReport r1 = kappa_lower_bound(*pc.mollifier, Backend::exact);
    BoundReport r2 = kappa_lower_bound(*pc2.mollifier, Backend::exact);
    CHECK(std::memcmp(&r1.kappa_lower_bound, &r2.kappa_lower_bound, sizeof(double)) == 0);
    CHECK(r1.kappa_lower_bound > 0.4172);
    CHECK(r1.kappa_lower_bound < 0.4190);
}

TEST_CASE("stated basis lists keep their dimensions through the echo") {
    // trailing zeros are real optimizer coordinates: a zero polynomial
    // normalizes to no coefficients, but the stated list must survive
    ParsedConfig pc = parse_config("[mollifier]\nq_basis = -0.5\np_monomials = 0, 0, 0\n");
    REQUIRE(pc.mollifier_basis.has_value());
    CHECK(pc.mollifier_basis->p_monomials.size() == 3);
    CHECK(pc.mollifier->p.is_zero());
    std::string canon = canonical_config_ini(pc);
    CHECK(canon.find("p_monomials = 0, 0, 0") != std::string::npos);
    ParsedConfig back = parse_config(canon);
    REQUIRE(back.mollifier_basis.has_value());
    CHECK(back.mollifier_basis->p_monomials.size() == 3);

    // raw-coefficient form does not claim a basis statement
    ParsedConfig raw = parse_config("[mollifier]\nq_poly = 1, -1\n");
    CHECK(!raw.mollifier_basis.has_value());
}

TEST_CASE("defaults: omitted optional keys equal explicit ones") {
    ParsedConfig d1 = parse_config("[mollifier]\nq_basis = -0.5\n");
    ParsedConfig d2 = parse_config(
        "[mollifier]\nq_basis = -0.5\np1_basis =\np2_monomials =\np_monomials =\nR = 13/10\n"
        "theta = 4/7\nsimple_zeros = false\npaper_literal_signs = false\n");
    CHECK(canonical_config_ini(d1) == canonical_config_ini(d2));
}

TEST_CASE("raw-polynomial keys: validation and canonicalization") {
    // P(0) = 1/4 != 0: error names the constraint and the offending value
    try {
        parse_config("[mollifier]\np_poly = 0.25, 1\n");
        FAIL_CHECK("expected ValidationError");
    } catch (const ValidationError& e) {
        std::string msg = e.what();
        CHECK(msg.find("P(0)") != std::string::npos);
        CHECK(msg.find("1/4") != std::string::npos);
    }
    expect_error("[mollifier]\np1_poly = 0, 0.9999999999999\n", "P1(1)");
    expect_error("[mollifier]\nq_poly = 1, 0, -1\n", "symmetric");

    // an in-span raw Q canonicalizes to the basis form
    ParsedConfig praw = parse_config("[mollifier]\nq_poly = 1, -1\n");
    CHECK(canonical_config_ini(praw).find("q_basis = -1") != std::string::npos);
}

TEST_CASE("structural errors name the offense") {
    expect_error("[mystery]\n", "unknown config section");
    expect_error("[mollifier]\nfoo = 1\n", "unknown key 'foo'");
    expect_error("[mollifier]\nR = 1\nR = 2\n", "duplicate key 'R'");
    expect_error("[mollifier]\nq_basis = 0\nq_poly = 1\n", "both q_basis and q_poly");
    expect_error("R = 1\n", "outside any section");
    expect_error("[moment]\nmollifier = config\n", "requires a [mollifier] section");
    expect_error(
        "[mollifier]\nsimple_zeros = true\nq_basis = -0.642, -1.227, -5.178\n",
        "simple_zeros_mode requires deg Q = 1");
}

TEST_CASE("full multi-section document round-trips") {
    const char* full =
        "[mollifier]\nq_basis = -1.032\nR = 1.116\ntheta = 4/7\n"
        "[moment]\nq = 3\ncharacter_index = 0\nT = 1000, 2000.5\ntheta = 0.45\nstep = 0.05\n"
        "mollifier = config\nem_n_multiplier = 1.3\nem_bernoulli_terms = 12\n"
        "[oracle]\nq = 3\ny_grid = 1000, 1000000\na = 0\nb = 0\n"
        "[optimize]\nfreeze = p, r\n"
        "[run]\nbackend = quad\nseed = 7\nbudget = 500\nthreads = 2\n";
    ParsedConfig pf = parse_config(full);
    REQUIRE(pf.moment.has_value());
    CHECK(pf.moment->mollifier.has_value());
    REQUIRE(pf.moment->T.size() == 2);
    CHECK(pf.moment->T[1] == 2000.5);
    REQUIRE(pf.oracle.has_value());
    CHECK(pf.oracle->y_grid.size() == 2);
    REQUIRE(pf.optimize.has_value());
    CHECK(pf.optimize->freeze_p);
    CHECK(pf.optimize->freeze_r);
    CHECK(!pf.optimize->freeze_q);
    REQUIRE(pf.run.backend.has_value());
    CHECK(*pf.run.backend == "quadrature");  // "quad" canonicalizes

    std::string cf = canonical_config_ini(pf);
    ParsedConfig pf2 = parse_config(cf);
    CHECK(canonical_config_ini(pf2) == cf);
}

TEST_CASE("report JSON shape") {
    ParsedConfig pc = parse_config(kKappaIni);
    std::string canon = canonical_config_ini(pc);
    BoundReport r1 = kappa_lower_bound(*pc.mollifier, Backend::exact);

    std::string bj = bound_report_json(r1, canon);
    CHECK(bj.find("\"kappa_lower_bound\": 0.41722") != std::string::npos);
    CHECK(bj.find("\"timings\": null") != std::string::npos);

    ConstrainedParams best = encode_params(*pc.mollifier);
    std::string oj = optimize_report_json(best, r1, canon);
    CHECK(oj.find("\"best_params\"") != std::string::npos);
    CHECK(oj.find("\"q_basis\": [-0.64200000000000002") != std::string::npos);

    VerificationReport vr;
    vr.points.push_back({2000.0, 1.5, 1.4, 1.0714, {0.1, 0.2}});
    std::string vj = verification_report_json(vr, "x = 1");
    CHECK(vj.find("\"points\"") != std::string::npos);
    CHECK(vj.find("\"partials\": [0.1") != std::string::npos);

    CHECK(json_string("a\"b\\c\nd") == "\"a\\\"b\\\\c\\nd\"");
}

TEST_CASE("every shipped config file parses") {
    const char* names[] = {"kappa.ini",         "kappa_star.ini",   "moment_q3.ini",
                           "moment_q4.ini",     "oracle_kappa.ini", "enrich_p_free.ini",
                           "enrich_p_zero.ini", "reference.ini"};
    for (const char* name : names) {
        CAPTURE(name);
        std::string path = std::string(CZP_CONFIG_DIR) + "/" + name;
        ParsedConfig pc = parse_config_file(path);
        // each shipped file carries a mollifier (reference.ini documents all
        // sections; the others drive a specific command)
        CHECK(pc.mollifier.has_value());
        std::string canon = canonical_config_ini(pc);
        CHECK(canonical_config_ini(parse_config(canon)) == canon);
    }
}

TEST_CASE("property selftest passes") {
    auto results = run_selftest();
    REQUIRE(!results.empty());
    for (const auto& r : results) {
        CAPTURE(r.name);
        CAPTURE(r.detail);
        CHECK(r.pass);
    }
    std::string js = selftest_report_json(results);
    CHECK(js.find("\"failed\": 0") != std::string::npos);
}
