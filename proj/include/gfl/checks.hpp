#pragma once

#include <functional>
#include <string>
#include <vector>

namespace gfl {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Check {
    std::string name;
    std::string description;
    std::function<CheckResult()> run;
};

/// The regression checks behind `verify-paper`: the fixed anchor values
/// (torsion profiles, the degree-2 identity, product formula anchors,
/// annihilator and certificate arithmetic, the checked valuation
/// identities). Each is fast enough for interactive use.
const std::vector<Check>& paper_checks();

/// Run all checks, or only the one named; throws argument_error for an
/// unknown name.
std::vector<CheckResult> run_paper_checks(const std::string& only = "");

}  // namespace gfl
