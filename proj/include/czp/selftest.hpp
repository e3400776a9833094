#pragma once

// Cross-module invariant suite backing `czp selftest`: classical identities
// with independently known values (Gauss sums, Hurwitz relations, special
// L-values, Mertens and Weil-shape bounds) plus internal consistency checks
// (backend agreement, truncation stability, pair-sum grouping).  Every
// property is deterministic; "random" cases use a fixed seed.

#include <string>
#include <vector>

namespace czp {

struct SelftestResult {
    std::string name;
    bool pass = false;
    std::string detail;  // worst-case margin or offending case
};

std::vector<SelftestResult> run_selftest();

// {"properties": [...], "passed": N, "failed": M}
std::string selftest_report_json(const std::vector<SelftestResult>& results);

}  // namespace czp
