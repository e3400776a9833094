#pragma once

// Configuration documents and report serialization.
//
// Configs are INI-style `key = value` documents with sections [mollifier],
// [moment], [oracle], [optimize], [run].  Decimal literals are parsed into
// exact rationals (rat.hpp) so the exact backend evaluates precisely the
// numbers that were written; unknown sections or keys are rejected, and
// constraint violations surface as ValidationError naming the constraint and
// the offending value.
//
// Reports are JSON documents with a fixed key order.  Every float is printed
// with 17 significant digits (lossless for IEEE doubles), and the "config"
// field carries a canonical INI echo whose re-parse reproduces the identical
// run — on the exact backend, bit-identically.  Wall-clock fields are
// serialized as null so reports from repeated runs compare byte-for-byte.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "czp/levinson.hpp"
#include "czp/moment.hpp"
#include "czp/mollifier.hpp"

namespace czp {

// [oracle]: brute-force vs analytic sigma comparison grid.
struct OracleSection {
    int64_t q = 3;
    std::vector<int64_t> y_grid{1000, 10000, 100000, 1000000};
    double a = 0.0;  // shift arguments of sigma(a, b)
    double b = 0.0;
};

// [optimize]: which parameter blocks stay at their start values.
struct OptimizeSection {
    bool freeze_q = false;
    bool freeze_p1 = false;
    bool freeze_p2 = false;
    bool freeze_p = false;
    bool freeze_r = false;
};

// [run]: execution knobs; CLI flags override these.
struct RunSection {
    std::optional<std::string> backend;  // "exact" or "quadrature"
    std::optional<int> order;            // jet-order override
    std::optional<uint64_t> seed;
    std::optional<int64_t> budget;
    std::optional<int> threads;
};

struct ParsedConfig {
    std::optional<MollifierConfig> mollifier;
    // Set when [mollifier] was stated entirely in basis form: the coefficient
    // lists exactly as written.  Polynomials normalize trailing zeros away,
    // but a stated zero coefficient is still an optimizer degree of freedom
    // (p_monomials = 0, 0, 0 searches three P coordinates from a zero start),
    // so the stated lists feed the optimizer and the canonical echo.
    std::optional<RationalBasis> mollifier_basis;
    std::optional<MomentConfig> moment;
    std::optional<OracleSection> oracle;
    std::optional<OptimizeSection> optimize;
    RunSection run;
};

// Parse an INI document.  Comments start with '#' or ';'; list values are
// comma-separated; an empty value is an empty list.  Every failure throws
// ValidationError.
ParsedConfig parse_config(const std::string& text);
ParsedConfig parse_config_file(const std::string& path);

// Canonical echo: emits exactly the sections present in `pc`, rationals as
// num/den strings, so parse_config(canonical_config_ini(pc)) rebuilds the
// same configuration exactly.
std::string canonical_config_ini(const ParsedConfig& pc);

// JSON scalar fragments.  json_double prints %.17g (null if non-finite).
std::string json_double(double v);
std::string json_string(const std::string& s);

// Machine-readable report documents.  `config_ini` is the canonical echo of
// the configuration that actually ran (after CLI overrides).
std::string bound_report_json(const BoundReport& rep, const std::string& config_ini);
std::string optimize_report_json(const ConstrainedParams& best, const BoundReport& rep,
                                 const std::string& config_ini);
std::string verification_report_json(const VerificationReport& rep, const std::string& config_ini);

}  // namespace czp
