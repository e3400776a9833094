#include "czp/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace czp {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ValidationError(msg); }

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& key, const std::string& value) {
    std::vector<std::string> out;
    std::string v = trim(value);
    if (v.empty()) return out;  // empty value = empty list
    size_t start = 0;
    while (true) {
        size_t comma = v.find(',', start);
        std::string tok =
            trim(comma == std::string::npos ? v.substr(start) : v.substr(start, comma - start));
        if (tok.empty()) bad("empty element in list value of '" + key + "'");
        out.push_back(tok);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

Rational rat_value(const std::string& key, const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        bad("key '" + key + "': " + e.what());
    }
}

std::vector<Rational> rat_list(const std::string& key, const std::string& value) {
    std::vector<Rational> out;
    for (const auto& tok : split_list(key, value)) out.push_back(rat_value(key, tok));
    return out;
}

double double_value(const std::string& key, const std::string& text) {
    return to_double(rat_value(key, text));
}

int64_t int_value(const std::string& key, const std::string& text) {
    Rational r = rat_value(key, text);
    if (boost::multiprecision::denominator(r) != 1)
        bad("key '" + key + "' requires an integer, got " + text);
    BigInt n = boost::multiprecision::numerator(r);
    if (n > std::numeric_limits<int64_t>::max() || n < std::numeric_limits<int64_t>::min())
        bad("key '" + key + "' out of range: " + text);
    return n.convert_to<int64_t>();
}

int int_value32(const std::string& key, const std::string& text) {
    int64_t v = int_value(key, text);
    if (v > std::numeric_limits<int>::max() || v < std::numeric_limits<int>::min())
        bad("key '" + key + "' out of range: " + text);
    return static_cast<int>(v);
}

bool bool_value(const std::string& key, const std::string& text) {
    if (text == "true") return true;
    if (text == "false") return false;
    bad("key '" + key + "' must be true or false, got '" + text + "'");
}

struct RawSection {
    std::vector<std::pair<std::string, std::string>> kv;
};

std::map<std::string, RawSection> scan_sections(const std::string& text) {
    static const std::set<std::string> known = {"mollifier", "moment", "oracle", "optimize",
                                                "run"};
    std::map<std::string, RawSection> secs;
    std::istringstream in(text);
    std::string line, current;
    while (std::getline(in, line)) {
        size_t cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.resize(cut);
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') bad("malformed section header: " + t);
            std::string name = trim(t.substr(1, t.size() - 2));
            if (!known.count(name)) bad("unknown config section [" + name + "]");
            if (secs.count(name)) bad("duplicate section [" + name + "]");
            secs[name];
            current = name;
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos) bad("expected 'key = value', got: " + t);
        if (current.empty()) bad("key outside any section: " + t);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) bad("empty key in [" + current + "]");
        for (const auto& [k, v] : secs[current].kv)
            if (k == key) bad("duplicate key '" + key + "' in [" + current + "]");
        secs[current].kv.emplace_back(key, value);
    }
    return secs;
}

MollifierConfig build_mollifier(const RawSection& sec,
                                std::optional<RationalBasis>& basis_out) {
    std::vector<Rational> q_basis, p1_basis, p2_mon, p_mon;
    std::optional<std::vector<Rational>> q_raw, p1_raw, p2_raw, p_raw;
    bool saw_q = false, saw_p1 = false, saw_p2 = false, saw_p = false;
    Rational R(13, 10), theta(4, 7);
    bool simple = false, literal = false;
    for (const auto& [key, value] : sec.kv) {
        if (key == "q_basis") {
            q_basis = rat_list(key, value);
            saw_q = true;
        } else if (key == "p1_basis") {
            p1_basis = rat_list(key, value);
            saw_p1 = true;
        } else if (key == "p2_monomials") {
            p2_mon = rat_list(key, value);
            saw_p2 = true;
        } else if (key == "p_monomials") {
            p_mon = rat_list(key, value);
            saw_p = true;
        } else if (key == "q_poly") {
            q_raw = rat_list(key, value);
        } else if (key == "p1_poly") {
            p1_raw = rat_list(key, value);
        } else if (key == "p2_poly") {
            p2_raw = rat_list(key, value);
        } else if (key == "p_poly") {
            p_raw = rat_list(key, value);
        } else if (key == "R") {
            R = rat_value(key, value);
        } else if (key == "theta") {
            theta = rat_value(key, value);
        } else if (key == "simple_zeros") {
            simple = bool_value(key, value);
        } else if (key == "paper_literal_signs") {
            literal = bool_value(key, value);
        } else {
            bad("unknown key '" + key + "' in [mollifier]");
        }
    }
    if (saw_q && q_raw) bad("[mollifier] sets both q_basis and q_poly; use one form");
    if (saw_p1 && p1_raw) bad("[mollifier] sets both p1_basis and p1_poly; use one form");
    if (saw_p2 && p2_raw) bad("[mollifier] sets both p2_monomials and p2_poly; use one form");
    if (saw_p && p_raw) bad("[mollifier] sets both p_monomials and p_poly; use one form");

    // Build from the constrained basis first (validates R and theta), then
    // install any raw-coefficient polynomials and re-validate the result so
    // constraint violations name the constraint and the offending value.
    MollifierConfig cfg = decode_params(q_basis, p1_basis, p2_mon, p_mon, R, theta,
                                        /*simple_zeros_mode=*/false, literal);
    if (q_raw) cfg.q_poly = RPoly(*q_raw);
    if (p1_raw) cfg.p1 = RPoly(*p1_raw);
    if (p2_raw) cfg.p2 = RPoly(*p2_raw);
    if (p_raw) cfg.p = RPoly(*p_raw);
    cfg.simple_zeros_mode = simple;
    cfg.validate();
    // A pure basis-form statement keeps its exact coefficient lists: stated
    // zeros are real optimizer coordinates even though the decoded
    // polynomials normalize them away.
    if (!q_raw && !p1_raw && !p2_raw && !p_raw)
        basis_out = RationalBasis{q_basis, p1_basis, p2_mon, p_mon};
    return cfg;
}

MomentConfig build_moment(const RawSection& sec, const std::optional<MollifierConfig>& moll) {
    MomentConfig mc;
    for (const auto& [key, value] : sec.kv) {
        if (key == "q") {
            mc.q = int_value(key, value);
        } else if (key == "character_index") {
            mc.character_index = int_value32(key, value);
        } else if (key == "T") {
            mc.T.clear();
            for (const auto& tok : split_list(key, value))
                mc.T.push_back(double_value(key, tok));
        } else if (key == "theta") {
            mc.theta = double_value(key, value);
        } else if (key == "step") {
            mc.step = double_value(key, value);
        } else if (key == "mollifier") {
            if (value == "unity") {
                mc.mollifier.reset();
            } else if (value == "config") {
                if (!moll) bad("[moment] mollifier = config requires a [mollifier] section");
                mc.mollifier = *moll;
            } else {
                bad("key 'mollifier' must be unity or config, got '" + value + "'");
            }
        } else if (key == "em_n_multiplier") {
            mc.em_n_multiplier = double_value(key, value);
        } else if (key == "em_bernoulli_terms") {
            mc.em_bernoulli_terms = int_value32(key, value);
        } else {
            bad("unknown key '" + key + "' in [moment]");
        }
    }
    mc.validate();
    return mc;
}

OracleSection build_oracle(const RawSection& sec) {
    OracleSection oc;
    for (const auto& [key, value] : sec.kv) {
        if (key == "q") {
            oc.q = int_value(key, value);
            if (oc.q < 1) bad("key 'q' must be >= 1, got " + value);
        } else if (key == "y_grid") {
            oc.y_grid.clear();
            for (const auto& tok : split_list(key, value)) {
                int64_t y = int_value(key, tok);
                if (y < 1) bad("key 'y_grid' entries must be >= 1, got " + tok);
                oc.y_grid.push_back(y);
            }
            if (oc.y_grid.empty()) bad("key 'y_grid' must list at least one cutoff");
        } else if (key == "a") {
            oc.a = double_value(key, value);
        } else if (key == "b") {
            oc.b = double_value(key, value);
        } else {
            bad("unknown key '" + key + "' in [oracle]");
        }
    }
    return oc;
}

OptimizeSection build_optimize(const RawSection& sec) {
    OptimizeSection op;
    for (const auto& [key, value] : sec.kv) {
        if (key == "freeze") {
            for (const auto& tok : split_list(key, value)) {
                if (tok == "q")
                    op.freeze_q = true;
                else if (tok == "p1")
                    op.freeze_p1 = true;
                else if (tok == "p2")
                    op.freeze_p2 = true;
                else if (tok == "p")
                    op.freeze_p = true;
                else if (tok == "r")
                    op.freeze_r = true;
                else
                    bad("freeze block must be one of q, p1, p2, p, r; got '" + tok + "'");
            }
        } else {
            bad("unknown key '" + key + "' in [optimize]");
        }
    }
    return op;
}

RunSection build_run(const RawSection& sec) {
    RunSection rs;
    for (const auto& [key, value] : sec.kv) {
        if (key == "backend") {
            if (value == "exact")
                rs.backend = "exact";
            else if (value == "quad" || value == "quadrature")
                rs.backend = "quadrature";
            else
                bad("key 'backend' must be exact or quadrature, got '" + value + "'");
        } else if (key == "order") {
            int v = int_value32(key, value);
            if (v < 1) bad("key 'order' must be >= 1, got " + value);
            rs.order = v;
        } else if (key == "seed") {
            int64_t v = int_value(key, value);
            if (v < 0) bad("key 'seed' must be >= 0, got " + value);
            rs.seed = static_cast<uint64_t>(v);
        } else if (key == "budget") {
            int64_t v = int_value(key, value);
            if (v < 1) bad("key 'budget' must be >= 1, got " + value);
            rs.budget = v;
        } else if (key == "threads") {
            int v = int_value32(key, value);
            if (v < 1) bad("key 'threads' must be >= 1, got " + value);
            rs.threads = v;
        } else {
            bad("unknown key '" + key + "' in [run]");
        }
    }
    return rs;
}

// ---- canonical emission ----------------------------------------------

std::string join_rat_list(const std::vector<Rational>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].str();
    }
    return out;
}

std::string poly_coeff_list(const RPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = 0; k <= p.degree(); ++k) {
        if (k) out += ", ";
        out += p.coeff(static_cast<size_t>(k)).str();
    }
    return out;
}

// Shortest decimal that re-parses to the same double; falls back to the
// exact dyadic fraction when %.17g needs an exponent (parse_rational does
// not read scientific notation).
std::string ini_double(double v) {
    if (!std::isfinite(v)) bad("non-finite value in config echo");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of("eE") == std::string::npos) {
        try {
            if (to_double(parse_rational(s)) == v) return s;
        } catch (const std::invalid_argument&) {
        }
    }
    return Rational(v).str();
}

void emit_mollifier(std::string& out, const MollifierConfig& m,
                    const std::optional<RationalBasis>& stated) {
    out += "[mollifier]\n";
    bool in_span = true;
    RationalBasis rb;
    if (stated) {
        rb = *stated;  // keep stated dimensions (explicit trailing zeros)
    } else {
        try {
            rb = encode_params_exact(m);
        } catch (const ValidationError&) {
            in_span = false;  // outside the constrained basis: echo raw coefficients
        }
    }
    if (in_span) {
        out += "q_basis = " + join_rat_list(rb.q_basis) + "\n";
        out += "p1_basis = " + join_rat_list(rb.p1_basis) + "\n";
        out += "p2_monomials = " + join_rat_list(rb.p2_monomials) + "\n";
        out += "p_monomials = " + join_rat_list(rb.p_monomials) + "\n";
    } else {
        out += "q_poly = " + poly_coeff_list(m.q_poly) + "\n";
        out += "p1_poly = " + poly_coeff_list(m.p1) + "\n";
        out += "p2_poly = " + poly_coeff_list(m.p2) + "\n";
        out += "p_poly = " + poly_coeff_list(m.p) + "\n";
    }
    out += "R = " + m.R.str() + "\n";
    out += "theta = " + m.theta.str() + "\n";
    out += std::string("simple_zeros = ") + (m.simple_zeros_mode ? "true" : "false") + "\n";
    out += std::string("paper_literal_signs = ") + (m.paper_literal_signs ? "true" : "false") +
           "\n";
}

void emit_moment(std::string& out, const MomentConfig& m) {
    out += "[moment]\n";
    out += "q = " + std::to_string(m.q) + "\n";
    out += "character_index = " + std::to_string(m.character_index) + "\n";
    std::string ts;
    for (size_t i = 0; i < m.T.size(); ++i) {
        if (i) ts += ", ";
        ts += ini_double(m.T[i]);
    }
    out += "T = " + ts + "\n";
    out += "theta = " + ini_double(m.theta) + "\n";
    out += "step = " + ini_double(m.step) + "\n";
    out += std::string("mollifier = ") + (m.mollifier ? "config" : "unity") + "\n";
    out += "em_n_multiplier = " + ini_double(m.em_n_multiplier) + "\n";
    out += "em_bernoulli_terms = " + std::to_string(m.em_bernoulli_terms) + "\n";
}

void emit_oracle(std::string& out, const OracleSection& oc) {
    out += "[oracle]\n";
    out += "q = " + std::to_string(oc.q) + "\n";
    std::string ys;
    for (size_t i = 0; i < oc.y_grid.size(); ++i) {
        if (i) ys += ", ";
        ys += std::to_string(oc.y_grid[i]);
    }
    out += "y_grid = " + ys + "\n";
    out += "a = " + ini_double(oc.a) + "\n";
    out += "b = " + ini_double(oc.b) + "\n";
}

void emit_optimize(std::string& out, const OptimizeSection& op) {
    out += "[optimize]\n";
    std::string fr;
    auto add = [&fr](const char* name) {
        if (!fr.empty()) fr += ", ";
        fr += name;
    };
    if (op.freeze_q) add("q");
    if (op.freeze_p1) add("p1");
    if (op.freeze_p2) add("p2");
    if (op.freeze_p) add("p");
    if (op.freeze_r) add("r");
    out += "freeze = " + fr + "\n";
}

void emit_run(std::string& out, const RunSection& rs) {
    if (!rs.backend && !rs.order && !rs.seed && !rs.budget && !rs.threads) return;
    out += "[run]\n";
    if (rs.backend) out += "backend = " + *rs.backend + "\n";
    if (rs.order) out += "order = " + std::to_string(*rs.order) + "\n";
    if (rs.seed) out += "seed = " + std::to_string(*rs.seed) + "\n";
    if (rs.budget) out += "budget = " + std::to_string(*rs.budget) + "\n";
    if (rs.threads) out += "threads = " + std::to_string(*rs.threads) + "\n";
}

}  // namespace

ParsedConfig parse_config(const std::string& text) {
    auto secs = scan_sections(text);
    ParsedConfig pc;
    if (auto it = secs.find("mollifier"); it != secs.end())
        pc.mollifier = build_mollifier(it->second, pc.mollifier_basis);
    if (auto it = secs.find("moment"); it != secs.end())
        pc.moment = build_moment(it->second, pc.mollifier);
    if (auto it = secs.find("oracle"); it != secs.end()) pc.oracle = build_oracle(it->second);
    if (auto it = secs.find("optimize"); it != secs.end())
        pc.optimize = build_optimize(it->second);
    if (auto it = secs.find("run"); it != secs.end()) pc.run = build_run(it->second);
    return pc;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string canonical_config_ini(const ParsedConfig& pc) {
    std::string out;
    const MollifierConfig* moll = nullptr;
    if (pc.mollifier)
        moll = &*pc.mollifier;
    else if (pc.moment && pc.moment->mollifier)
        moll = &*pc.moment->mollifier;
    auto sep = [&out] {
        if (!out.empty()) out += "\n";
    };
    if (moll) {
        sep();
        emit_mollifier(out, *moll, pc.mollifier_basis);
    }
    if (pc.moment) {
        sep();
        emit_moment(out, *pc.moment);
    }
    if (pc.oracle) {
        sep();
        emit_oracle(out, *pc.oracle);
    }
    if (pc.optimize) {
        sep();
        emit_optimize(out, *pc.optimize);
    }
    std::string run;
    emit_run(run, pc.run);
    if (!run.empty()) {
        sep();
        out += run;
    }
    return out;
}

// ---- JSON ---------------------------------------------------------------

std::string json_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        unsigned char c = static_cast<unsigned char>(ch);
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (c < 0x20) {
                    char b[8];
                    std::snprintf(b, sizeof b, "\\u%04x", c);
                    out += b;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
    return out;
}

namespace {

std::string json_double_array(const std::vector<double>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += json_double(v[i]);
    }
    return out + "]";
}

std::string json_string_array(const std::vector<std::string>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += json_string(v[i]);
    }
    return out + "]";
}

// The shared tail of bound and optimize reports.  Wall-clock time is
// deliberately serialized as null: reports from identical runs must compare
// byte-for-byte.
std::string bound_fields(const BoundReport& rep, const std::string& config_ini) {
    std::string out;
    out += "  \"kappa_lower_bound\": " + json_double(rep.kappa_lower_bound) + ",\n";
    out += "  \"functional_value\": " + json_double(rep.functional_value) + ",\n";
    out += "  \"config\": " + json_string(config_ini) + ",\n";
    out += "  \"backend\": " + json_string(rep.backend) + ",\n";
    out += "  \"jet_orders\": [" + std::to_string(rep.jet_order_a) + ", " +
           std::to_string(rep.jet_order_b) + "],\n";
    out += "  \"timings\": null,\n";
    out += "  \"warnings\": " + json_string_array(rep.warnings) + "\n";
    return out;
}

}  // namespace

std::string bound_report_json(const BoundReport& rep, const std::string& config_ini) {
    return "{\n" + bound_fields(rep, config_ini) + "}\n";
}

std::string optimize_report_json(const ConstrainedParams& best, const BoundReport& rep,
                                 const std::string& config_ini) {
    std::string out = "{\n";
    out += "  \"best_params\": {\n";
    out += "    \"q_basis\": " + json_double_array(best.q_basis) + ",\n";
    out += "    \"p1_basis\": " + json_double_array(best.p1_basis) + ",\n";
    out += "    \"p2_monomials\": " + json_double_array(best.p2_monomials) + ",\n";
    out += "    \"p_monomials\": " + json_double_array(best.p_monomials) + ",\n";
    out += "    \"R\": " + json_double(best.R) + "\n";
    out += "  },\n";
    out += bound_fields(rep, config_ini);
    out += "}\n";
    return out;
}

std::string verification_report_json(const VerificationReport& rep,
                                     const std::string& config_ini) {
    std::string out = "{\n  \"points\": [\n";
    for (size_t i = 0; i < rep.points.size(); ++i) {
        const MomentPoint& pt = rep.points[i];
        out += "    {\"T\": " + json_double(pt.T) + ", \"I_numeric\": " +
               json_double(pt.I_numeric) + ", \"I_main\": " + json_double(pt.I_main) +
               ", \"ratio\": " + json_double(pt.ratio) +
               ", \"partials\": " + json_double_array(pt.partials) + "}";
        out += (i + 1 < rep.points.size()) ? ",\n" : "\n";
    }
    out += "  ],\n";
    out += "  \"config\": " + json_string(config_ini) + ",\n";
    out += "  \"runtime\": null,\n";
    out += "  \"warnings\": " + json_string_array(rep.warnings) + "\n";
    out += "}\n";
    return out;
}

}  // namespace czp
