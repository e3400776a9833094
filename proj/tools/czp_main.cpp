// czp: command-line surface of the critical-zero-proportion toolkit.
//
// Five commands: bound, optimize, verify-moment, sigma-oracle, selftest.
// Each emits a machine-readable JSON report first (stdout, and --out PATH
// when given), then a human-readable table.  Exit codes: 0 success,
// 2 validation error, 3 capacity error, 4 numeric-domain error (e.g. a
// configuration outside the Levinson regime), 5 selftest failure.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "czp/arith.hpp"
#include "czp/config.hpp"
#include "czp/levinson.hpp"
#include "czp/mainterm.hpp"
#include "czp/moment.hpp"
#include "czp/mollifier.hpp"
#include "czp/selftest.hpp"

namespace {

using namespace czp;

struct Flags {
    std::string config_path;
    std::string backend;  // "", "exact", "quad", "quadrature"
    int order = 0;        // 0 = unset (orders follow deg Q)
    int64_t seed = -1;    // -1 = unset
    int64_t budget = -1;  // -1 = unset
    int threads = 0;      // 0 = unset
    std::string out_path;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// Structured document first, human table second; --out receives the
// structured document only.
void emit(const std::string& json, const std::string& human, const std::string& out_path) {
    std::fputs(json.c_str(), stdout);
    std::fputs(human.c_str(), stdout);
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ValidationError("cannot write report to " + out_path);
        f << json;
    }
}

ParsedConfig load(const Flags& fl, const char* command) {
    if (fl.config_path.empty())
        throw ValidationError(std::string(command) + " requires --config PATH");
    return parse_config_file(fl.config_path);
}

Backend backend_of(const std::string& name) {
    return name == "exact" ? Backend::exact : Backend::quadrature;
}

std::string effective_backend(const Flags& fl, const ParsedConfig& pc,
                              const std::string& fallback) {
    if (!fl.backend.empty())
        return fl.backend == "quad" ? std::string("quadrature") : fl.backend;
    if (pc.run.backend) return *pc.run.backend;
    return fallback;
}

std::string human_warnings(const std::vector<std::string>& warnings) {
    if (warnings.empty()) return "  warnings            none\n";
    std::string out;
    for (const auto& w : warnings) out += "  warning             " + w + "\n";
    return out;
}

int cmd_bound(const Flags& fl) {
    ParsedConfig pc = load(fl, "bound");
    if (!pc.mollifier) throw ValidationError("bound requires a [mollifier] section");
    std::string backend = effective_backend(fl, pc, "exact");
    int order = fl.order > 0 ? fl.order : pc.run.order.value_or(-1);

    BoundReport rep = kappa_lower_bound(*pc.mollifier, backend_of(backend), order);

    ParsedConfig echo;
    echo.mollifier = rep.config;
    echo.mollifier_basis = pc.mollifier_basis;
    echo.run.backend = backend;
    if (order > 0) echo.run.order = order;
    std::string json = bound_report_json(rep, canonical_config_ini(echo));

    std::string human = "\nbound\n";
    human += fmt("  kappa lower bound   %.17g\n", rep.kappa_lower_bound);
    human += fmt("  functional value    %.17g\n", rep.functional_value);
    human += "  backend             " + rep.backend + "\n";
    human += fmt("  jet orders          (%d, %d)\n", rep.jet_order_a, rep.jet_order_b);
    human += human_warnings(rep.warnings);
    human += fmt("  elapsed             %.3f s\n", rep.elapsed_seconds);
    emit(json, human, fl.out_path);
    return 0;
}

int cmd_optimize(const Flags& fl) {
    ParsedConfig pc = load(fl, "optimize");
    if (!pc.mollifier) throw ValidationError("optimize requires a [mollifier] section");
    std::string backend = effective_backend(fl, pc, "quadrature");
    int order = fl.order > 0 ? fl.order : pc.run.order.value_or(-1);
    uint64_t seed = fl.seed >= 0 ? static_cast<uint64_t>(fl.seed) : pc.run.seed.value_or(1);
    int64_t budget = fl.budget > 0 ? fl.budget : pc.run.budget.value_or(2000);
    OptimizeSection opt = pc.optimize.value_or(OptimizeSection{});

    OptimizeSettings settings;
    settings.theta = pc.mollifier->theta;
    settings.simple_zeros_mode = pc.mollifier->simple_zeros_mode;
    settings.paper_literal_signs = pc.mollifier->paper_literal_signs;
    settings.freeze_q = opt.freeze_q;
    settings.freeze_p1 = opt.freeze_p1;
    settings.freeze_p2 = opt.freeze_p2;
    settings.freeze_p = opt.freeze_p;
    settings.freeze_r = opt.freeze_r;
    settings.backend = backend_of(backend);
    settings.order_override = order;

    // The search dimensions follow the stated basis lists when the config
    // used basis form: an explicit zero coefficient is a coordinate to
    // optimize, which encode_params cannot recover from the normalized
    // polynomials.
    ConstrainedParams start;
    if (pc.mollifier_basis) {
        auto widen = [](const std::vector<Rational>& v) {
            std::vector<double> out;
            out.reserve(v.size());
            for (const auto& r : v) out.push_back(to_double(r));
            return out;
        };
        start.q_basis = widen(pc.mollifier_basis->q_basis);
        start.p1_basis = widen(pc.mollifier_basis->p1_basis);
        start.p2_monomials = widen(pc.mollifier_basis->p2_monomials);
        start.p_monomials = widen(pc.mollifier_basis->p_monomials);
        start.R = to_double(pc.mollifier->R);
    } else {
        start = encode_params(*pc.mollifier);
    }
    auto [best, rep] = optimize_mollifier(start, settings, budget, seed);

    ParsedConfig echo;
    echo.mollifier = pc.mollifier;  // the starting configuration
    echo.mollifier_basis = pc.mollifier_basis;
    echo.optimize = opt;
    echo.run.backend = backend;
    if (order > 0) echo.run.order = order;
    echo.run.seed = seed;
    echo.run.budget = budget;
    std::string json = optimize_report_json(best, rep, canonical_config_ini(echo));

    auto vec_line = [](const char* name, const std::vector<double>& v) {
        std::string s = fmt("  %-18s  [", name);
        for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt("%.6f", v[i]);
        return s + "]\n";
    };
    std::string human = "\noptimize\n";
    human += fmt("  kappa lower bound   %.17g\n", rep.kappa_lower_bound);
    human += fmt("  functional value    %.17g\n", rep.functional_value);
    human += "  backend             " + rep.backend + "\n";
    human += fmt("  seed / budget       %llu / %lld\n", (unsigned long long)seed,
                 (long long)budget);
    human += vec_line("best q_basis", best.q_basis);
    human += vec_line("best p1_basis", best.p1_basis);
    human += vec_line("best p2_monomials", best.p2_monomials);
    human += vec_line("best p_monomials", best.p_monomials);
    human += fmt("  best R              %.6f\n", best.R);
    human += human_warnings(rep.warnings);
    human += fmt("  elapsed             %.3f s\n", rep.elapsed_seconds);
    emit(json, human, fl.out_path);
    return 0;
}

int cmd_verify_moment(const Flags& fl) {
    ParsedConfig pc = load(fl, "verify-moment");
    if (!pc.moment) throw ValidationError("verify-moment requires a [moment] section");
    int threads = fl.threads > 0 ? fl.threads : pc.run.threads.value_or(1);

    VerificationReport rep = verify_report(*pc.moment, threads);

    ParsedConfig echo;
    echo.moment = rep.config;
    echo.mollifier_basis = pc.mollifier_basis;
    if (threads > 1) echo.run.threads = threads;
    std::string json = verification_report_json(rep, canonical_config_ini(echo));

    std::string human = "\nverify-moment\n";
    human += fmt("  %10s  %16s  %16s  %10s\n", "T", "I_numeric", "I_main", "ratio");
    for (const auto& pt : rep.points)
        human += fmt("  %10.1f  %16.8g  %16.8g  %10.6f\n", pt.T, pt.I_numeric, pt.I_main,
                     pt.ratio);
    human += human_warnings(rep.warnings);
    human += fmt("  elapsed             %.3f s\n", rep.elapsed_seconds);
    emit(json, human, fl.out_path);
    return 0;
}

int cmd_sigma_oracle(const Flags& fl) {
    ParsedConfig pc = load(fl, "sigma-oracle");
    if (!pc.mollifier) throw ValidationError("sigma-oracle requires a [mollifier] section");
    OracleSection oc = pc.oracle.value_or(OracleSection{});
    const MollifierConfig& cfg = *pc.mollifier;

    // Analytic reference: the bare main-term jet constant, rescaled by the
    // arithmetic prefactor (q/phi(q)) / (theta L) with L = log(y) / theta.
    double s_const = s_total_quad(cfg, oc.a, oc.b, 0, 0).at(0, 0);
    SieveTables tables = build_sieve(oc.q);
    double q_over_phi =
        static_cast<double>(oc.q) / static_cast<double>(tables.phi[static_cast<size_t>(oc.q)]);

    struct Row {
        int64_t y;
        double oracle, analytic, rel_err;
    };
    std::vector<Row> rows;
    for (int64_t y : oc.y_grid) {
        double oracle = sigma_bruteforce(cfg, y, oc.q, oc.a, oc.b);
        double analytic = q_over_phi * s_const / std::log(static_cast<double>(y));
        double rel = std::fabs(oracle - analytic) / std::fabs(analytic);
        rows.push_back({y, oracle, analytic, rel});
    }

    ParsedConfig echo;
    echo.mollifier = cfg;
    echo.mollifier_basis = pc.mollifier_basis;
    echo.oracle = oc;
    std::string config_ini = canonical_config_ini(echo);

    std::string json = "{\n  \"rows\": [\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        json += "    {\"y\": " + std::to_string(rows[i].y) +
                ", \"sigma_oracle\": " + json_double(rows[i].oracle) +
                ", \"sigma_analytic\": " + json_double(rows[i].analytic) +
                ", \"rel_err\": " + json_double(rows[i].rel_err) + "}";
        json += (i + 1 < rows.size()) ? ",\n" : "\n";
    }
    json += "  ],\n";
    json += "  \"q\": " + std::to_string(oc.q) + ",\n";
    json += "  \"a\": " + json_double(oc.a) + ",\n";
    json += "  \"b\": " + json_double(oc.b) + ",\n";
    json += "  \"config\": " + json_string(config_ini) + ",\n";
    json += "  \"warnings\": []\n}\n";

    std::string human = "\nsigma-oracle\n";
    human += fmt("  %10s  %16s  %16s  %10s\n", "y", "oracle", "analytic", "rel_err");
    for (const auto& r : rows)
        human += fmt("  %10lld  %16.10g  %16.10g  %10.4f\n", (long long)r.y, r.oracle,
                     r.analytic, r.rel_err);
    emit(json, human, fl.out_path);
    return 0;
}

int cmd_selftest(const Flags& fl) {
    std::vector<SelftestResult> results = run_selftest();
    std::string json = selftest_report_json(results);
    std::string human = "\nselftest\n";
    int failed = 0;
    for (const auto& r : results) {
        human += fmt("  %-24s %s  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                     r.detail.c_str());
        failed += r.pass ? 0 : 1;
    }
    human += failed ? fmt("  %d properties FAILED\n", failed)
                    : fmt("  all %d properties passed\n", (int)results.size());
    emit(json, human, fl.out_path);
    return failed ? 5 : 0;
}

int fail_report(const char* category, const std::string& msg, int code,
                const std::string& out_path) {
    std::string json = "{\n  \"error\": {\"category\": \"" + std::string(category) +
                       "\", \"message\": " + json_string(msg) + "}\n}\n";
    std::fputs(json.c_str(), stdout);
    std::fprintf(stderr, "error (%s): %s\n", category, msg.c_str());
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (f) f << json;
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"critical-zero-proportion toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags fl;
    app.add_option("--config", fl.config_path, "configuration document (INI)");
    app.add_option("--backend", fl.backend, "main-term backend")
        ->check(CLI::IsMember({"exact", "quad", "quadrature"}));
    app.add_option("--order", fl.order, "jet-order override (default: deg Q)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", fl.seed, "optimizer seed")->check(CLI::NonNegativeNumber);
    app.add_option("--budget", fl.budget, "optimizer evaluation budget")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", fl.out_path, "write the structured report to this path");
    app.add_option("--threads", fl.threads, "worker threads (verify-moment)")
        ->check(CLI::PositiveNumber);

    CLI::App* c_bound = app.add_subcommand("bound", "zero-proportion lower bound");
    CLI::App* c_opt = app.add_subcommand("optimize", "optimize mollifier parameters");
    CLI::App* c_verify =
        app.add_subcommand("verify-moment", "numeric vs analytic moment comparison");
    CLI::App* c_oracle =
        app.add_subcommand("sigma-oracle", "arithmetic oracle vs analytic main term");
    CLI::App* c_self = app.add_subcommand("selftest", "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad usage is a validation failure
    }

    try {
        if (c_bound->parsed()) return cmd_bound(fl);
        if (c_opt->parsed()) return cmd_optimize(fl);
        if (c_verify->parsed()) return cmd_verify_moment(fl);
        if (c_oracle->parsed()) return cmd_sigma_oracle(fl);
        if (c_self->parsed()) return cmd_selftest(fl);
        return fail_report("validation", "no command given", 2, fl.out_path);
    } catch (const ValidationError& e) {
        return fail_report("validation", e.what(), 2, fl.out_path);
    } catch (const CapacityError& e) {
        return fail_report("capacity", e.what(), 3, fl.out_path);
    } catch (const NumericDomainError& e) {
        return fail_report("numeric-domain", e.what(), 4, fl.out_path);
    } catch (const std::exception& e) {
        return fail_report("internal", e.what(), 1, fl.out_path);
    }
}
