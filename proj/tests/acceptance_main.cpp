// Acceptance gate: one check per release criterion, each printed as a single
// PASS/FAIL line with its measured margin and wall time.  Criteria that
// exercise the installed command-line binary run it as a subprocess and read
// back the structured report; the rest call the library directly.
//
// usage: acceptance <czp-binary> <configs-dir>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "czp/config.hpp"
#include "czp/levinson.hpp"
#include "czp/mainterm.hpp"
#include "czp/moment.hpp"
#include "czp/selftest.hpp"

using namespace czp;
using nlohmann::json;

namespace {

std::string g_czp;      // path to the czp binary
std::string g_configs;  // path to the shipped configs

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Run a shell command, return its exit status (-1 if it died abnormally).
int run(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

MollifierConfig load_mollifier(const std::string& name) {
    ParsedConfig pc = parse_config_file(g_configs + "/" + name);
    if (!pc.mollifier) throw std::runtime_error(name + " lacks a [mollifier] section");
    return *pc.mollifier;
}

// ---- criterion 1: kappa bound from the CLI, exact backend, in window ----
Outcome criterion1() {
    const char* out = "acceptance_c1.json";
    auto t0 = std::chrono::steady_clock::now();
    int rc = run("\"" + g_czp + "\" bound --config \"" + g_configs +
                 "/kappa.ini\" --backend exact --out " + out + " > /dev/null");
    double secs = seconds_since(t0);
    if (rc != 0) return {false, fmt("czp bound exited with %d", rc)};
    json j = json::parse(slurp(out));
    double kappa = j.at("kappa_lower_bound").get<double>();
    bool ok = kappa >= 0.4172 && kappa <= 0.4190 &&
              j.at("backend").get<std::string>() == "exact" && secs <= 60.0;
    return {ok, fmt("kappa=%.8f in [0.4172, 0.4190], backend=%s, %.1f s (limit 60)", kappa,
                    j.at("backend").get<std::string>().c_str(), secs)};
}

// ---- criterion 2: simple-zeros bound from the CLI, linear Q ----
Outcome criterion2() {
    const char* out = "acceptance_c2.json";
    auto t0 = std::chrono::steady_clock::now();
    int rc = run("\"" + g_czp + "\" bound --config \"" + g_configs +
                 "/kappa_star.ini\" --backend exact --out " + out + " > /dev/null");
    double secs = seconds_since(t0);
    if (rc != 0) return {false, fmt("czp bound exited with %d", rc)};
    json j = json::parse(slurp(out));
    double kappa = j.at("kappa_lower_bound").get<double>();
    auto orders = j.at("jet_orders");
    bool ok = kappa >= 0.4074 && kappa <= 0.4090 && orders.size() == 2 &&
              orders[0].get<int>() == 1 && orders[1].get<int>() == 1 && secs <= 30.0;
    return {ok, fmt("kappa*=%.8f in [0.4074, 0.4090], jet orders [%d, %d], %.1f s (limit 30)",
                    kappa, orders[0].get<int>(), orders[1].get<int>(), secs)};
}

// ---- criterion 3: backend agreement and truncation stability ----
Outcome criterion3() {
    double worst_backend = 0, worst_order = 0;
    for (const char* name : {"kappa.ini", "kappa_star.ini"}) {
        MollifierConfig cfg = load_mollifier(name);
        BoundReport re = kappa_lower_bound(cfg, Backend::exact);
        BoundReport rq = kappa_lower_bound(cfg, Backend::quadrature);
        worst_backend =
            std::max(worst_backend, std::fabs(re.functional_value - rq.functional_value) /
                                        std::fabs(re.functional_value));
        BoundReport rhi = kappa_lower_bound(cfg, Backend::exact, cfg.q_degree() + 2);
        worst_order =
            std::max(worst_order, std::fabs(rhi.kappa_lower_bound - re.kappa_lower_bound));
    }
    bool ok = worst_backend <= 1e-9 && worst_order <= 1e-10;
    return {ok, fmt("backend rel diff %.2e (limit 1e-9), order shift %.2e (limit 1e-10)",
                    worst_backend, worst_order)};
}

// ---- criterion 4: the prime-sum piece buys a real improvement ----
Outcome criterion4() {
    ConstrainedParams start;
    start.q_basis = {-0.642, -1.227, -5.178};
    start.p1_basis = {-0.617, -0.125, -0.148};
    start.p2_monomials = {1.0};
    start.p_monomials = {0.0, 0.0, 0.0};
    start.R = 1.3;

    OptimizeSettings frozen;
    frozen.freeze_p = true;
    auto [best_a, rep_a] = optimize_mollifier(start, frozen, 2000, 1);

    OptimizeSettings free_p;
    auto [best_b, rep_b] = optimize_mollifier(start, free_p, 2000, 1);
    (void)best_a;
    (void)best_b;

    bool ok = rep_a.kappa_lower_bound >= 0.405 &&
              rep_b.kappa_lower_bound >= rep_a.kappa_lower_bound + 0.002;
    return {ok, fmt("P frozen at 0: %.6f (floor 0.405); P free: %.6f (needs +0.002 = %.6f)",
                    rep_a.kappa_lower_bound, rep_b.kappa_lower_bound,
                    rep_a.kappa_lower_bound + 0.002)};
}

// ---- criterion 5: finite arithmetic sum approaches the analytic jet ----
Outcome criterion5() {
    MollifierConfig cfg = load_mollifier("kappa.ini");
    auto t0 = std::chrono::steady_clock::now();

    // j-decomposition must match the direct double sum where both run
    for (int64_t q : {1, 3, 4}) {
        double jd = sigma_bruteforce(cfg, 200, q, 0.0, 0.0);
        double di = sigma_bruteforce_direct(cfg, 200, q, 0.0, 0.0);
        if (std::fabs(jd - di) > 1e-10 * std::max(1.0, std::fabs(di)))
            return {false, fmt("decomposed %.12g != direct %.12g at y=200, q=%lld", jd, di,
                               static_cast<long long>(q))};
    }

    double s_const = s_total_quad(cfg, 0.0, 0.0, 0, 0).at(0, 0);
    auto rel_at = [&](int64_t y) {
        double pred = 1.5 * s_const / std::log(static_cast<double>(y));  // q/phi(q) = 3/2
        double got = sigma_bruteforce(cfg, y, 3, 0.0, 0.0);
        return std::fabs(got - pred) / std::fabs(pred);
    };
    double r3 = rel_at(1000);
    double r6 = rel_at(1000000);
    double secs = seconds_since(t0);
    bool ok = r6 <= 0.25 && r6 < r3 && secs <= 300.0;
    return {ok, fmt("rel err %.4f at y=1e3 -> %.4f at y=1e6 (limit 0.25, must shrink), "
                    "%.1f s (limit 300)",
                    r3, r6, secs)};
}

// ---- criterion 6: twisted second moment tracks its main term ----
Outcome criterion6() {
    MollifierConfig moll = load_mollifier("kappa.ini");
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    for (int64_t q : {3, 4}) {
        MomentConfig mc;
        mc.q = q;
        mc.character_index = 0;
        mc.T = {1000.0, 2000.0, 4000.0};
        mc.theta = 0.45;
        mc.step = 0.05;
        mc.mollifier = moll;
        VerificationReport rep = verify_report(mc);
        double e1 = std::fabs(rep.points[0].ratio - 1.0);
        double r2 = rep.points[1].ratio;
        double e4 = std::fabs(rep.points[2].ratio - 1.0);
        ok = ok && r2 >= 0.8 && r2 <= 1.2 && e4 < e1;
        detail += fmt("q=%lld ratios %.4f/%.4f/%.4f  ", static_cast<long long>(q),
                      rep.points[0].ratio, r2, rep.points[2].ratio);
    }
    double secs = seconds_since(t0);
    ok = ok && secs <= 900.0;
    return {ok, detail + fmt("(T=1000/2000/4000; mid in [0.8,1.2], drift shrinks; %.0f s, "
                             "limit 900)",
                             secs)};
}

// ---- criterion 7: invariant suite ----
Outcome criterion7() {
    auto results = run_selftest();
    int failed = 0;
    std::string first;
    for (const auto& r : results)
        if (!r.pass) {
            if (first.empty()) first = r.name + ": " + r.detail;
            ++failed;
        }
    if (failed) return {false, fmt("%d properties failed; first: %s", failed, first.c_str())};
    return {true, fmt("all %d properties hold", static_cast<int>(results.size()))};
}

// ---- criterion 8: optimization reports are bit-reproducible ----
Outcome criterion8() {
    const char* out_a = "acceptance_c8a.json";
    const char* out_b = "acceptance_c8b.json";
    std::string base = "\"" + g_czp + "\" optimize --config \"" + g_configs +
                       "/enrich_p_free.ini\" --out ";
    int rc_a = run(base + out_a + " > /dev/null");
    int rc_b = run(base + out_b + " > /dev/null");
    if (rc_a != 0 || rc_b != 0)
        return {false, fmt("czp optimize exited with %d / %d", rc_a, rc_b)};
    std::string doc_a = slurp(out_a);
    std::string doc_b = slurp(out_b);
    if (doc_a != doc_b) return {false, "reports differ between identical runs"};
    double kappa = json::parse(doc_a).at("kappa_lower_bound").get<double>();
    return {true, fmt("two runs byte-identical (%zu bytes, kappa=%.8f)", doc_a.size(), kappa)};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: acceptance <czp-binary> <configs-dir>\n");
        return 2;
    }
    g_czp = argv[1];
    g_configs = argv[2];

    Outcome (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                               criterion5, criterion6, criterion7, criterion8};
    int failures = 0;
    for (size_t i = 0; i < sizeof criteria / sizeof criteria[0]; ++i) {
        Outcome oc;
        try {
            oc = criteria[i]();
        } catch (const std::exception& e) {
            oc = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %zu: %s — %s\n", i + 1, oc.pass ? "PASS" : "FAIL",
                    oc.detail.c_str());
        std::fflush(stdout);
        failures += oc.pass ? 0 : 1;
    }
    if (failures) {
        std::printf("%d of 8 criteria FAILED\n", failures);
        return 1;
    }
    std::printf("all 8 criteria passed\n");
    return 0;
}
